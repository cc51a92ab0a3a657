#include "agora/toml_lite.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace agora {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + what);
}

/// Strips a trailing comment that is not inside a string literal, then trims.
std::string strip(const std::string& raw) {
    std::string out;
    bool in_string = false;
    for (char c : raw) {
        if (c == '"') in_string = !in_string;
        if (c == '#' && !in_string) break;
        out.push_back(c);
    }
    auto b = out.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = out.find_last_not_of(" \t\r");
    return out.substr(b, e - b + 1);
}

struct ValueParser {
    const std::string& s;
    std::size_t pos = 0;
    int line;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    }

    nlohmann::json parse() {
        skip_ws();
        if (pos >= s.size()) fail(line, "missing value");
        char c = s[pos];
        if (c == '[') return parse_array();
        if (c == '"') return parse_string();
        return parse_scalar();
    }

    nlohmann::json parse_array() {
        ++pos;  // '['
        nlohmann::json arr = nlohmann::json::array();
        skip_ws();
        if (pos < s.size() && s[pos] == ']') {
            ++pos;
            return arr;
        }
        while (true) {
            arr.push_back(parse());
            skip_ws();
            if (pos >= s.size()) fail(line, "unterminated array");
            if (s[pos] == ',') {
                ++pos;
                skip_ws();
                if (pos < s.size() && s[pos] == ']') {  // trailing comma
                    ++pos;
                    return arr;
                }
                continue;
            }
            if (s[pos] == ']') {
                ++pos;
                return arr;
            }
            fail(line, "expected ',' or ']' in array");
        }
    }

    nlohmann::json parse_string() {
        ++pos;  // '"'
        std::string out;
        while (pos < s.size() && s[pos] != '"') out.push_back(s[pos++]);
        if (pos >= s.size()) fail(line, "unterminated string");
        ++pos;
        return out;
    }

    nlohmann::json parse_scalar() {
        std::size_t start = pos;
        while (pos < s.size() && s[pos] != ',' && s[pos] != ']' && s[pos] != ' ' &&
               s[pos] != '\t')
            ++pos;
        std::string tok = s.substr(start, pos - start);
        if (tok == "true") return true;
        if (tok == "false") return false;
        try {
            std::size_t used = 0;
            if (tok.find_first_of(".eE") == std::string::npos) {
                long long v = std::stoll(tok, &used);
                if (used == tok.size()) return v;
            } else {
                double v = std::stod(tok, &used);
                if (used == tok.size()) return v;
            }
        } catch (const std::exception&) {
        }
        fail(line, "cannot parse value '" + tok + "'");
    }
};

nlohmann::json* descend(nlohmann::json& root, const std::string& dotted, int line) {
    nlohmann::json* cur = &root;
    std::stringstream ss(dotted);
    std::string part;
    while (std::getline(ss, part, '.')) {
        auto b = part.find_first_not_of(" \t");
        auto e = part.find_last_not_of(" \t");
        if (b == std::string::npos) fail(line, "empty section name component");
        part = part.substr(b, e - b + 1);
        if (!cur->contains(part)) (*cur)[part] = nlohmann::json::object();
        cur = &(*cur)[part];
        if (!cur->is_object()) fail(line, "section path collides with a value");
    }
    return cur;
}

}  // namespace

nlohmann::json parse_toml_lite(const std::string& text) {
    nlohmann::json root = nlohmann::json::object();
    nlohmann::json* section = &root;

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = strip(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.size() >= 2 && line[1] == '[')
                fail(line_no, "array-of-tables is not supported");
            if (line.back() != ']') fail(line_no, "unterminated section header");
            section = descend(root, line.substr(1, line.size() - 2), line_no);
            continue;
        }

        auto eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, "expected 'key = value'");
        std::string key = strip(line.substr(0, eq));
        if (key.empty()) fail(line_no, "empty key");
        for (char c : key)
            if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
                fail(line_no, "bad key character in '" + key + "'");
        if (section->contains(key)) fail(line_no, "duplicate key '" + key + "'");

        ValueParser vp{line.substr(eq + 1), 0, line_no};
        nlohmann::json value = vp.parse();
        vp.skip_ws();
        if (vp.pos != vp.s.size()) fail(line_no, "trailing characters after value");
        (*section)[key] = std::move(value);
    }
    return root;
}

nlohmann::json load_toml_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_toml_lite(ss.str());
}

}  // namespace agora
