#include "bekk/extremes.hpp"

#include "bekk/error.hpp"
#include "bekk/parallel.hpp"
#include "bekk/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace bekk {

void validate_scale(const VsrvScale& scale) {
    if (scale.alpha.size() != scale.c.size()) throw Error(ErrorCode::DimensionMismatch, "alpha and c sizes differ");
    for (std::size_t i = 0; i < scale.alpha.size(); ++i)
        if (!(scale.alpha[i] > 0.0) || !(scale.c[i] > 0.0))
            throw Error(ErrorCode::Domain, "pseudo-norm scales must be positive");
}

double vsrv_norm(std::span<const double> x, const VsrvScale& scale) {
    if (x.size() != scale.alpha.size() || x.size() != scale.c.size())
        throw Error(ErrorCode::DimensionMismatch, "vector and scale dimensions differ");
    double out = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) out = std::max(out, std::pow(std::abs(x[i]), scale.alpha[i]) / scale.c[i]);
    return out;
}

std::vector<double> vsrv_norm_series(const PathSample& path, const VsrvScale& scale) {
    validate_scale(scale);
    std::vector<double> out(path.T);
    for (std::size_t t = 0; t < path.T; ++t) out[t] = vsrv_norm(path.row(t), scale);
    return out;
}

std::vector<double> angle_grid(std::size_t points) {
    if (points < 2) throw Error(ErrorCode::Domain, "angle grid needs at least 2 points");
    std::vector<double> grid(points);
    for (std::size_t j = 0; j < points; ++j)
        grid[j] = 0.5 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(points - 1);
    grid.back() = 0.5 * std::numbers::pi;
    return grid;
}

std::vector<std::size_t> descending_ranks(std::span<const double> x) {
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] > x[b]; });
    std::vector<std::size_t> rank(x.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = pos + 1;
    return rank;
}

SpectralEstimate spectral_measure(const PathSample& path, std::span<const std::size_t> k_values,
                                  std::span<const double> theta_grid) {
    if (path.d != 2) throw Error(ErrorCode::DimensionMismatch, "spectral-measure estimator requires d = 2");
    const std::size_t T = path.T;
    for (std::size_t k : k_values)
        if (k < 1 || k >= T) throw Error(ErrorCode::Domain, "spectral-measure estimator needs 1 <= k < T");
    if (!std::is_sorted(theta_grid.begin(), theta_grid.end()))
        throw Error(ErrorCode::Domain, "angle grid must be ascending");

    const auto r1 = descending_ranks(path.column(0));
    const auto r2 = descending_ranks(path.column(1));

    SpectralEstimate out;
    out.theta.assign(theta_grid.begin(), theta_grid.end());
    out.k.assign(k_values.begin(), k_values.end());
    out.T = T;
    const double top = static_cast<double>(T + 1);
    for (std::size_t k : k_values) {
        const std::size_t cutoff = T + 1 - k;
        std::vector<double> angles;
        for (std::size_t t = 0; t < T; ++t) {
            if (std::max(r1[t], r2[t]) < cutoff) continue;
            angles.push_back(std::atan2(top - static_cast<double>(r2[t]), top - static_cast<double>(r1[t])));
        }
        std::sort(angles.begin(), angles.end());
        std::vector<double> phi;
        phi.reserve(theta_grid.size());
        for (double theta : theta_grid) {
            const auto count = std::upper_bound(angles.begin(), angles.end(), theta) - angles.begin();
            phi.push_back(static_cast<double>(count) / static_cast<double>(k));
        }
        out.phi.push_back(std::move(phi));
    }
    return out;
}

std::size_t default_extremal_horizon(double a) {
    const double drift = std::log(std::abs(a)) - 0.5 * (kEulerGamma + std::numbers::ln2);
    if (!(drift < 0.0)) throw Error(ErrorCode::Domain, "coefficient outside the stationarity region");
    return static_cast<std::size_t>(std::ceil(50.0 / -drift));
}

McEstimate extremal_index_mc(const ModelSpec& spec, std::size_t i, double alpha_i, std::size_t K, std::size_t reps,
                             std::uint64_t seed) {
    if (!is_diagonal(spec)) throw Error(ErrorCode::Inapplicable, "marginal extremal-index formula requires a Diagonal spec");
    if (i >= spec.d) throw Error(ErrorCode::DimensionMismatch, "marginal index out of range");
    if (K < 1 || reps < 2) throw Error(ErrorCode::Domain, "extremal_index_mc needs K >= 1 and reps >= 2");
    if (!(alpha_i > 0.0)) throw Error(ErrorCode::Domain, "alpha_i must be positive");
    const double a = spec.A[0](i, i);

    // Fixed chunking keeps results independent of the worker count.
    constexpr std::size_t kChunk = 8192;
    const std::size_t chunks = (reps + kChunk - 1) / kChunk;
    std::vector<double> sums(chunks), squares(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        Stream stream = Stream::derive(seed, c);
        const std::size_t begin = c * kChunk;
        const std::size_t end = std::min(reps, begin + kChunk);
        double s = 0.0, s2 = 0.0;
        for (std::size_t r = begin; r < end; ++r) {
            double p = 1.0;
            double later_max = 0.0;
            for (std::size_t k = 1; k <= K; ++k) {
                p *= a * stream.normal();
                if (p > 0.0) later_max = std::max(later_max, std::pow(p, alpha_i));
            }
            // max_{k>=0} = max(1, later_max) since P_0 = 1.
            const double v = std::max(1.0, later_max) - later_max;
            s += v;
            s2 += v * v;
        }
        sums[c] = s;
        squares[c] = s2;
    });
    const double n = static_cast<double>(reps);
    const double mean = std::accumulate(sums.begin(), sums.end(), 0.0) / n;
    const double second = std::accumulate(squares.begin(), squares.end(), 0.0) / n;
    const double var = std::max(0.0, second - mean * mean) * n / (n - 1.0);
    return {mean, std::sqrt(var / n)};
}

double empirical_quantile(std::span<const double> series, double quantile) {
    if (series.empty()) throw Error(ErrorCode::Domain, "quantile of an empty series");
    std::vector<double> sorted(series.begin(), series.end());
    const auto idx = std::min(sorted.size() - 1, static_cast<std::size_t>(std::floor(quantile * static_cast<double>(sorted.size()))));
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(idx), sorted.end());
    return sorted[idx];
}

namespace {

void require_extreme_quantile(double quantile) {
    if (!(quantile > 0.9 && quantile < 1.0)) throw Error(ErrorCode::Domain, "quantile must lie in (0.9, 1)");
}

}  // namespace

double extremal_index_blocks(std::span<const double> series, double quantile, std::size_t block_len) {
    require_extreme_quantile(quantile);
    if (block_len < 2) throw Error(ErrorCode::Domain, "block length must be >= 2");
    const double u = empirical_quantile(series, quantile);
    std::size_t exceedances = 0, blocks_hit = 0;
    for (std::size_t start = 0; start < series.size(); start += block_len) {
        const std::size_t end = std::min(series.size(), start + block_len);
        std::size_t in_block = 0;
        for (std::size_t t = start; t < end; ++t)
            if (series[t] > u) ++in_block;
        exceedances += in_block;
        if (in_block > 0) ++blocks_hit;
    }
    if (exceedances == 0) throw Error(ErrorCode::Degenerate, "no exceedances of the threshold");
    return std::min(1.0, static_cast<double>(blocks_hit) / static_cast<double>(exceedances));
}

double extremal_index_blocks(const PathSample& path, std::size_t i, double quantile, std::size_t block_len) {
    if (i >= path.d) throw Error(ErrorCode::DimensionMismatch, "marginal index out of range");
    const auto col = path.column(i);
    return extremal_index_blocks(col, quantile, block_len);
}

std::map<std::size_t, std::size_t> cluster_sizes(std::span<const double> series, double quantile, std::size_t gap) {
    require_extreme_quantile(quantile);
    if (gap < 1) throw Error(ErrorCode::Domain, "cluster gap must be >= 1");
    const double u = empirical_quantile(series, quantile);
    std::map<std::size_t, std::size_t> hist;
    std::size_t current = 0;
    std::size_t quiet = 0;
    for (double v : series) {
        if (v > u) {
            ++current;
            quiet = 0;
        } else if (current > 0 && ++quiet >= gap) {
            ++hist[current];
            current = 0;
            quiet = 0;
        }
    }
    if (current > 0) ++hist[current];
    if (hist.empty()) throw Error(ErrorCode::Degenerate, "no exceedances of the threshold");
    return hist;
}

std::map<std::size_t, std::size_t> cluster_sizes(const PathSample& path, const VsrvScale& scale, double quantile,
                                                 std::size_t gap) {
    const auto norms = vsrv_norm_series(path, scale);
    return cluster_sizes(norms, quantile, gap);
}

double mean_cluster_size(const std::map<std::size_t, std::size_t>& histogram) {
    std::size_t clusters = 0, members = 0;
    for (const auto& [size, count] : histogram) {
        clusters += count;
        members += size * count;
    }
    if (clusters == 0) throw Error(ErrorCode::Degenerate, "empty cluster histogram");
    return static_cast<double>(members) / static_cast<double>(clusters);
}

}  // namespace bekk
