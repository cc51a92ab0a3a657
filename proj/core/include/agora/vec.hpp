#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace agora {

/// Small dense vector of runtime dimension 1..3 (opinion states live in R^d,
/// higher dimensions are out of scope).
class Vec {
public:
    static constexpr int kMaxDim = 3;

    Vec() = default;
    explicit Vec(int dim, double fill = 0.0) : dim_(dim) {
        if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("Vec: dim must be in [1,3]");
        c_.fill(0.0);
        for (int i = 0; i < dim_; ++i) c_[i] = fill;
    }
    static Vec scalar(double x) {
        Vec v(1);
        v[0] = x;
        return v;
    }

    int dim() const { return dim_; }
    double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < dim_; ++i) c_[i] += o.c_[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Vec& operator*=(double a) {
        for (int i = 0; i < dim_; ++i) c_[i] *= a;
        return *this;
    }

    double norm2() const {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) s += c_[i] * c_[i];
        return s;
    }
    double norm() const { return std::sqrt(norm2()); }

    bool finite() const {
        for (int i = 0; i < dim_; ++i)
            if (!std::isfinite(c_[i])) return false;
        return true;
    }

private:
    std::array<double, kMaxDim> c_{};
    int dim_ = 1;
};

inline Vec operator+(Vec a, const Vec& b) { return a += b; }
inline Vec operator-(Vec a, const Vec& b) { return a -= b; }
inline Vec operator*(double s, Vec a) { return a *= s; }
inline Vec operator*(Vec a, double s) { return a *= s; }

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}
inline double dist(const Vec& a, const Vec& b) { return (a - b).norm(); }

}  // namespace agora
