#pragma once

#include "bekk/model.hpp"
#include "bekk/numerics.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bekk {

inline constexpr std::size_t kDefaultBurnin = 10000;
inline constexpr double kDivergenceThreshold = 1e300;

/// T x d realized states, row-major (row t = X_t).
struct PathSample {
    std::size_t T = 0;
    std::size_t d = 0;
    std::vector<double> data;
    std::uint64_t seed = 0;
    std::size_t burnin = 0;
    std::string spec_digest;
    bool diverged = false;
    /// Step (counting burn-in) at which divergence was detected; 0 if none.
    std::size_t diverged_at = 0;

    [[nodiscard]] std::span<const double> row(std::size_t t) const { return {data.data() + t * d, d}; }
    [[nodiscard]] double at(std::size_t t, std::size_t i) const { return data[t * d + i]; }
    /// Copy of column i.
    [[nodiscard]] std::vector<double> column(std::size_t i) const;
};

/// Wraps caller-supplied data (e.g. read from CSV) as a path.
[[nodiscard]] PathSample make_path(std::size_t d, std::vector<double> data);

/// X_0 = 0, X_t = M_t X_{t-1} + Q_t for burnin + T steps; keeps the last T.
/// On max-norm above kDivergenceThreshold stops and returns the rows produced
/// so far (possibly none) with diverged = true.
[[nodiscard]] PathSample simulate_sre(const ModelSpec& spec, std::size_t T, std::size_t burnin, std::uint64_t seed);

/// X_t = L_t Z_t with L_t the Cholesky factor of
/// H_t = C + sum_i A_i X_{t-1} X_{t-1}^T A_i^T. Requires A0 absent.
[[nodiscard]] PathSample simulate_h_form(const ModelSpec& spec, std::size_t T, std::size_t burnin,
                                         std::uint64_t seed);

/// K x d rows: Y_0 = y0, Y_{k+1} = M_{k+1} Y_k. (K + 1 rows including Y_0.)
struct TailChainSample {
    std::size_t K = 0;
    std::size_t d = 0;
    std::vector<double> data;

    [[nodiscard]] std::span<const double> row(std::size_t k) const { return {data.data() + k * d, d}; }
    [[nodiscard]] std::size_t rows() const noexcept { return K + 1; }
};

/// Forward tail chain. The multipliers are drawn from the same stream order as
/// draw_coefficient's m, without Q. Requires A0 absent.
[[nodiscard]] TailChainSample simulate_tail_chain(const ModelSpec& spec, std::span<const double> y0, std::size_t K,
                                                  std::uint64_t seed);

}  // namespace bekk
