#pragma once

#include "bekk/model.hpp"
#include "bekk/numerics.hpp"
#include "bekk/simulate.hpp"
#include "bekk/tails.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace bekk {

/// Uncentered (1/T) sum_t X_t X_t^T.
[[nodiscard]] Matrix sample_cov(const PathSample& path);

struct CrossTailEntry {
    std::size_t i = 0;
    std::size_t j = 0;
    double predicted = 0.0;  // alpha_cross(alpha_i, alpha_j)
    double empirical = 0.0;  // Hill on |X_i X_j|
    std::size_t k = 0;
    bool within_band = false;
};

inline constexpr double kCrossTailBand = 0.6;

/// Hill on |X_{t,i} X_{t,j}| for every i <= j against alpha_cross.
[[nodiscard]] std::vector<CrossTailEntry> cross_tail_check(const PathSample& path, const TailProfile& profile,
                                                           std::size_t k, double band = kCrossTailBand);

struct FluctuationPoint {
    std::size_t n = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    double iqr = 0.0;
};

struct FluctuationExponent {
    std::size_t i = 0;
    std::size_t j = 0;
    double alpha_cross = 0.0;
    double slope = 0.0;
    /// max(1/2, 1/alpha_ij) - 1: -1/2 for alpha_ij > 2, -(1 - 1/alpha_ij) on (1, 2],
    /// growth 1/alpha_ij - 1 > 0 below 1.
    double predicted_slope = 0.0;
};

struct FluctuationScan {
    std::vector<FluctuationExponent> exponents;
    std::vector<FluctuationPoint> points;
};

[[nodiscard]] double predicted_fluctuation_slope(double alpha_ij);

/// For each n in n_grid simulates reps independent paths (burn-in `burnin`),
/// takes the interquartile range of (Gamma_n)_{ij} across replicates, and
/// regresses log IQR on log n per pair i <= j.
[[nodiscard]] FluctuationScan fluctuation_scan(const ModelSpec& spec, const TailProfile& profile,
                                               const std::vector<std::size_t>& n_grid, std::size_t reps,
                                               std::uint64_t seed, std::size_t burnin = kDefaultBurnin);

struct CovReport {
    Matrix gamma;
    Matrix alpha_cross_pred;
    std::vector<CrossTailEntry> cross;
    std::optional<FluctuationScan> fluctuation;
};

}  // namespace bekk
