#include "agora/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agora {

InfluenceKernel InfluenceKernel::type1_exponential(double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("kernel: lambda must be > 0");
    InfluenceKernel k;
    k.kind_ = Kind::type1_exponential;
    k.lambda_ = lambda;
    k.lipschitz_ = lambda;
    k.sup_ = 1.0;
    k.floor_ = 0.0;  // positive but with no uniform floor over [0, inf)
    return k;
}

InfluenceKernel InfluenceKernel::type1_constant() {
    InfluenceKernel k;
    k.kind_ = Kind::type1_constant;
    k.lipschitz_ = 0.0;
    k.sup_ = 1.0;
    k.floor_ = 1.0;
    return k;
}

InfluenceKernel InfluenceKernel::type2_bump() {
    InfluenceKernel k;
    k.kind_ = Kind::type2_bump;
    // psi(r) = (1-r^2)^2 on [0,1]; |psi'| peaks at r = 1/sqrt(3)
    k.lipschitz_ = 8.0 / (3.0 * std::sqrt(3.0));
    k.sup_ = 1.0;
    k.support_radius_ = 1.0;
    return k;
}

InfluenceKernel InfluenceKernel::type2_tent() {
    InfluenceKernel k;
    k.kind_ = Kind::type2_tent;
    k.lipschitz_ = 1.0;
    k.sup_ = 1.0;
    k.support_radius_ = 1.0;
    return k;
}

InfluenceKernel InfluenceKernel::from_table(std::vector<std::pair<double, double>> points,
                                            double declared_lipschitz) {
    if (points.size() < 2) throw std::invalid_argument("kernel table: need at least two nodes");
    std::sort(points.begin(), points.end());
    if (points.front().first < 0.0) throw std::invalid_argument("kernel table: r must be >= 0");
    double sup = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        auto [r, v] = points[i];
        if (!std::isfinite(r) || !std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("kernel table: values must be finite and >= 0");
        sup = std::max(sup, v);
        if (i > 0) {
            double dr = r - points[i - 1].first;
            if (dr <= 0.0) throw std::invalid_argument("kernel table: duplicate abscissa");
            double slope = std::abs(v - points[i - 1].second) / dr;
            if (slope > declared_lipschitz * (1.0 + 1e-12))
                throw std::invalid_argument("kernel table: sampled Lipschitz estimate exceeds declared bound");
        }
    }
    if (!(sup > 0.0)) throw std::invalid_argument("kernel table: identically zero");
    InfluenceKernel k;
    k.kind_ = Kind::table;
    k.table_ = std::move(points);
    k.lipschitz_ = declared_lipschitz;
    k.sup_ = sup;
    if (k.table_.back().second == 0.0) k.support_radius_ = k.table_.back().first;
    return k;
}

double InfluenceKernel::operator()(double r) const {
    if (r < 0.0) throw std::invalid_argument("kernel: r must be >= 0");
    switch (kind_) {
        case Kind::type1_exponential: return std::exp(-lambda_ * r);
        case Kind::type1_constant: return 1.0;
        case Kind::type2_bump: {
            if (r >= 1.0) return 0.0;
            double u = 1.0 - r * r;
            return u * u;
        }
        case Kind::type2_tent: return r >= 1.0 ? 0.0 : 1.0 - r;
        case Kind::table: {
            if (r <= table_.front().first) return table_.front().second;
            if (r >= table_.back().first) return table_.back().second;
            auto it = std::upper_bound(table_.begin(), table_.end(), std::make_pair(r, 0.0),
                                       [](const auto& a, const auto& b) { return a.first < b.first; });
            auto lo = std::prev(it);
            double w = (r - lo->first) / (it->first - lo->first);
            return (1.0 - w) * lo->second + w * it->second;
        }
    }
    return 0.0;
}

double InfluenceKernel::positive_floor(double r_max, bool* vacuous) const {
    if (r_max < 0.0) throw std::invalid_argument("positive_floor: r_max must be >= 0");
    if (vacuous) *vacuous = false;
    if (compactly_supported() && r_max > support_radius_) {
        if (vacuous) *vacuous = true;
        return 0.0;
    }
    switch (kind_) {
        case Kind::type1_constant: return 1.0;
        case Kind::type1_exponential: return std::exp(-lambda_ * r_max);
        case Kind::type2_bump: {
            double u = 1.0 - r_max * r_max;
            return u * u;
        }
        case Kind::type2_tent: return 1.0 - r_max;
        case Kind::table: {
            // nodes inside [0, r_max] plus the endpoint; linear pieces attain
            // their extrema at nodes
            double inf = (*this)(r_max);
            for (const auto& [r, v] : table_) {
                if (r > r_max) break;
                inf = std::min(inf, v);
            }
            return inf;
        }
    }
    return 0.0;
}

std::string InfluenceKernel::name() const {
    switch (kind_) {
        case Kind::type1_exponential: return "type1_exponential";
        case Kind::type1_constant: return "type1_constant";
        case Kind::type2_bump: return "type2_bump";
        case Kind::type2_tent: return "type2_tent";
        case Kind::table: return "table";
    }
    return "table";
}

}  // namespace agora
