#pragma once

#include <span>
#include <vector>

#include "agora/kernels.hpp"
#include "agora/vec.hpp"

namespace agora {

struct Moments {
    double m0 = 1.0;
    Vec m1;
    double m2 = 0.0;
};

/// One row of the trajectory time series.
struct DiagnosticsRecord {
    double t = 0.0;
    double n = 0.0;       // population N_t
    double m = 0.0;       // particle / atom count
    double m0 = 1.0;
    Vec m1;
    double m2 = 0.0;
    double variance = 0.0;          // V
    double variance_inflow = 0.0;   // V_X
    double dissipation = 0.0;       // D
    double m1_dist = 0.0;           // |m1 - X|^2
    double c1_residual = 0.0;
};

struct ClusterReport {
    int count = 0;                    // J
    std::vector<int> labels;          // per-agent cluster id
    std::vector<Vec> centers;
    std::vector<double> masses;       // in s-mass units (member_count / rho)
    double min_inter_distance = 0.0;  // between cluster centers
    double max_intra_diameter = 0.0;
};

/// Weighted moments; weights must sum to 1 (equal weights for the micro
/// ensemble). m0 is identically 1 by construction.
Moments moments(std::span<const Vec> xs, std::span<const double> weights);
Moments moments_equal_weight(std::span<const Vec> xs);

double variance(std::span<const Vec> xs, std::span<const double> weights, const Vec& m1);
double variance_about(std::span<const Vec> xs, std::span<const double> weights, const Vec& x_ref);

/// D = sum_ij w_i w_j psi(|x_i-x_j|) |x_i-x_j|^2. O(M^2) for general kernels;
/// constant kernels reduce algebraically to 2*psi*V and take the O(M) route.
double dissipation(std::span<const Vec> xs, std::span<const double> weights,
                   const InfluenceKernel& kernel);

/// Single-linkage components of the graph with edges |x_i - x_j| <= link_radius.
/// Sorted gap scan in d = 1, pairwise union-find otherwise.
ClusterReport detect_clusters(std::span<const Vec> xs, double link_radius, double rho);

/// Least-squares slope of log V against log t over [t_lo, t_hi], negated.
/// Non-positive samples are dropped (window shrunk) before fitting.
double fit_decay_exponent(std::span<const double> ts, std::span<const double> vs, double t_lo,
                          double t_hi);

/// |dV/dt - (-b V + b M1dist - D)| between two consecutive records, all terms
/// evaluated at the midpoint. O(dt) + O(1/rho) for the particle system.
double variance_identity_residual(const DiagnosticsRecord& a, const DiagnosticsRecord& b,
                                  double rate_mid);

}  // namespace agora
