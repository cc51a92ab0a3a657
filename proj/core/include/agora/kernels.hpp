#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace agora {

/// Influence function psi(r) weighting pairwise attraction by distance.
///
/// Type I presets are everywhere positive with a finite sup; Type II presets
/// are Lipschitz with compact support on [0,1] and psi(1) = 0. Discontinuous
/// step weights are rejected: a table whose sampled Lipschitz estimate
/// exceeds its declared bound does not construct.
class InfluenceKernel {
public:
    enum class Kind { type1_exponential, type1_constant, type2_bump, type2_tent, table };

    static InfluenceKernel type1_exponential(double lambda);
    static InfluenceKernel type1_constant();
    static InfluenceKernel type2_bump();
    static InfluenceKernel type2_tent();
    /// Piecewise-linear table on r >= 0 (clamped right of the last node to its
    /// value). declared_lipschitz is checked against the table's own slopes.
    static InfluenceKernel from_table(std::vector<std::pair<double, double>> points,
                                      double declared_lipschitz);

    double operator()(double r) const;

    Kind kind() const { return kind_; }
    bool compactly_supported() const { return support_radius_ < kInfiniteSupport; }
    double support_radius() const { return support_radius_; }
    double lipschitz_bound() const { return lipschitz_; }
    double sup_bound() const { return sup_; }
    /// Positive floor psi_* for Type II kernels (identically 0 past support).
    double declared_floor() const { return floor_; }

    /// inf of psi over [0, r_max]. For a compactly supported kernel with
    /// r_max past the support this is 0 and *vacuous (if given) is set.
    double positive_floor(double r_max, bool* vacuous = nullptr) const;

    std::string name() const;

    static constexpr double kInfiniteSupport = std::numeric_limits<double>::infinity();

private:
    InfluenceKernel() = default;
    Kind kind_ = Kind::type1_constant;
    double lambda_ = 1.0;
    double lipschitz_ = 0.0;
    double sup_ = 1.0;
    double support_radius_ = kInfiniteSupport;
    double floor_ = 0.0;
    std::vector<std::pair<double, double>> table_;
};

}  // namespace agora
