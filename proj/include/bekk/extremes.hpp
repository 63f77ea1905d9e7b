#pragma once

#include "bekk/model.hpp"
#include "bekk/simulate.hpp"
#include "bekk/tails.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

namespace bekk {

/// Per-marginal scaling (alpha_i, c_i) of the pseudo-norm max_i c_i^{-1} |x_i|^{alpha_i}.
struct VsrvScale {
    std::vector<double> alpha;
    std::vector<double> c;
};

/// Throws Domain unless every alpha_i, c_i is positive and sizes agree.
void validate_scale(const VsrvScale& scale);

/// max_i c_i^{-1} |x_i|^{alpha_i}. Marginally homogeneous: scaling x_i by
/// t^{1/alpha_i} multiplies the result by t.
[[nodiscard]] double vsrv_norm(std::span<const double> x, const VsrvScale& scale);

/// theta_j = j * (pi/2) / (points - 1), j = 0..points-1.
[[nodiscard]] std::vector<double> angle_grid(std::size_t points);

struct SpectralEstimate {
    std::vector<double> theta;
    std::vector<std::size_t> k;
    /// phi[j][g] = estimate for k[j] at theta[g].
    std::vector<std::vector<double>> phi;
    std::size_t T = 0;
};

/// Descending ranks R_t = #{s : x_s >= x_t}, exact ties broken by time index
/// (earlier observation ranks higher), so ranks form a permutation of 1..T.
[[nodiscard]] std::vector<std::size_t> descending_ranks(std::span<const double> x);

/// Rank-based bivariate spectral-measure estimator:
///   phi(theta) = (1/k) #{t : max(R1_t, R2_t) >= T+1-k,
///                         atan((T+1-R2_t)/(T+1-R1_t)) <= theta}.
/// Requires d = 2 and 1 <= k < T for each k.
[[nodiscard]] SpectralEstimate spectral_measure(const PathSample& path, std::span<const std::size_t> k_values,
                                                std::span<const double> theta_grid);

/// Default truncation ceil(50 / |log|a| + (gamma + log 2)/2|).
[[nodiscard]] std::size_t default_extremal_horizon(double a);

/// Marginal extremal index of a Diagonal spec,
///   theta_i = E[max_{k>=0} (P_k)_+^alpha - max_{k>=1} (P_k)_+^alpha],
///   P_k = A_ii^k m_1 ... m_k, P_0 = 1,
/// truncated at K and averaged over reps draws.
[[nodiscard]] McEstimate extremal_index_mc(const ModelSpec& spec, std::size_t i, double alpha_i, std::size_t K,
                                           std::size_t reps, std::uint64_t seed);

/// Blocks estimator on an arbitrary series: (#blocks with an exceedance of the
/// empirical q-quantile) / (#exceedances), clipped to (0, 1]. The trailing
/// partial block counts as a block.
[[nodiscard]] double extremal_index_blocks(std::span<const double> series, double quantile, std::size_t block_len);

/// Blocks estimator on the upper tail of marginal i.
[[nodiscard]] double extremal_index_blocks(const PathSample& path, std::size_t i, double quantile,
                                           std::size_t block_len);

/// Empirical q-quantile: the order statistic at index floor(q * n), clipped to n-1.
[[nodiscard]] double empirical_quantile(std::span<const double> series, double quantile);

/// Runs declustering of exceedances of the q-quantile; a cluster ends after
/// `gap` consecutive non-exceedances. Returns size -> count.
[[nodiscard]] std::map<std::size_t, std::size_t> cluster_sizes(std::span<const double> series, double quantile,
                                                               std::size_t gap);

/// Clusters of the pseudo-norm series vsrv_norm(X_t).
[[nodiscard]] std::map<std::size_t, std::size_t> cluster_sizes(const PathSample& path, const VsrvScale& scale,
                                                               double quantile, std::size_t gap);

[[nodiscard]] double mean_cluster_size(const std::map<std::size_t, std::size_t>& histogram);

[[nodiscard]] std::vector<double> vsrv_norm_series(const PathSample& path, const VsrvScale& scale);

}  // namespace bekk
