#pragma once

#include "bekk/model.hpp"
#include "bekk/simulate.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bekk {

/// E|m|^alpha for m ~ N(0,1): 2^{alpha/2} Gamma((alpha+1)/2) / sqrt(pi).
[[nodiscard]] double gaussian_abs_moment(double alpha);
[[nodiscard]] double log_gaussian_abs_moment(double alpha);

/// Unique alpha > 0 with E|a m|^alpha = 1, i.e. root of
/// h(alpha) = log E|m|^alpha + alpha log|a|. Requires 0 < |a| < threshold_constant().
[[nodiscard]] double solve_alpha(double a);

/// Inverse of solve_alpha: a = (E|m|^alpha)^{-1/alpha}.
[[nodiscard]] double solve_coeff(double alpha);

/// alpha_i alpha_j / (alpha_i + alpha_j).
[[nodiscard]] double alpha_cross(double alpha_i, double alpha_j);

/// E[|a m|^alpha log|a m|] by adaptive quadrature.
[[nodiscard]] double abs_moment_log_weighted(double a, double alpha);

struct McEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
};

struct GoldieEstimate {
    McEstimate value;
    double numerator = 0.0;
    double denominator = 0.0;
    /// First-half and second-half numerator means disagree by > 3 standard errors.
    bool burnin_sensitive = false;
};

inline constexpr double kGoldieMinCoeff = 0.05;

/// Constant c_i in P(+-X_i > x) ~ c_i x^{-alpha_i} for a Diagonal spec:
///   c_i = E[|X_1|^a - |A_ii m_1 X_0|^a] / (2 a E[|A_ii m_1|^a log|A_ii m_1|]),  a = alpha_i.
/// Numerator by simulation of the marginal recursion (reps x T pairs after
/// burn-in); denominator by quadrature.
[[nodiscard]] GoldieEstimate goldie_constant_mc(const ModelSpec& spec, std::size_t i, double alpha_i, std::size_t T,
                                                std::size_t reps, std::uint64_t seed,
                                                std::size_t burnin = kDefaultBurnin);

/// Hill estimator over the k largest of |sample|.
[[nodiscard]] double hill_abs(std::span<const double> sample, std::size_t k);

/// Hill estimator on |X_{t,i}|.
[[nodiscard]] double hill(const PathSample& path, std::size_t i, std::size_t k);

/// Default grid: ~16 geometric points from sqrt(T)/2 to 4 sqrt(T), clipped to [1, T-1].
[[nodiscard]] std::vector<std::size_t> default_k_grid(std::size_t T);

struct HillPlateau {
    std::vector<std::size_t> k;
    std::vector<double> alpha;
    /// Median of the estimates over the grid.
    double plateau = 0.0;
};

[[nodiscard]] HillPlateau hill_plateau(std::span<const double> sample, std::span<const std::size_t> k_grid);

struct TailProfile {
    std::vector<double> alpha;
    std::vector<McEstimate> c;  // empty unless computed
    ParamClass param_class;
};

/// Analytic per-marginal tail indices. Diagonal: alpha_i = solve_alpha(A_ii).
/// Similarity: all marginals share solve_alpha(a) with A_1 = a O. Other
/// classes (and any spec with A0) throw Inapplicable.
[[nodiscard]] TailProfile tail_profile(const ModelSpec& spec);

}  // namespace bekk
