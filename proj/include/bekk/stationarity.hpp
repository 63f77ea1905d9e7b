#pragma once

#include "bekk/model.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>

namespace bekk {

inline constexpr double kEulerGamma = 0.5772156649015329;

/// exp((gamma + log 2) / 2) = 1.88736...: for l = 1 the recursion is
/// geometrically ergodic when rho(A) is below this constant.
[[nodiscard]] double threshold_constant();

struct LyapunovEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t n_steps = 0;
    std::size_t n_reps = 0;
};

inline constexpr std::size_t kLyapunovDefaultSteps = 100000;
inline constexpr std::size_t kLyapunovDefaultReps = 20;
inline constexpr std::size_t kLyapunovTransient = 100;

/// Monte Carlo top Lyapunov exponent of the products M_n ... M_1. Each
/// replicate iterates a renormalized random unit vector, drops the first
/// kLyapunovTransient steps, then averages log-growth over n_steps.
[[nodiscard]] LyapunovEstimate lyapunov_mc(const ModelSpec& spec, std::size_t n_steps, std::size_t n_reps,
                                           std::uint64_t seed);

struct GateResult {
    double rho = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

/// Closed-form criterion for l = 1 without A0; throws Inapplicable otherwise.
[[nodiscard]] GateResult gate_l1(const ModelSpec& spec);

struct MomentResult {
    double rho = 0.0;
    bool pass = false;
    bool exact = false;
};

inline constexpr std::size_t kMomentSizeLimit = 4096;

/// rho(E[M^{(x)2n}]) < 1 implies E||X||^{2n} < inf. Exact for n = 1
/// (A0^{(x)2} + sum_i A_i^{(x)2}); Monte Carlo average of mc_samples draws for n >= 2.
[[nodiscard]] MomentResult moment_condition(const ModelSpec& spec, unsigned n, std::size_t mc_samples,
                                            std::uint64_t seed);

struct StationarityReport {
    LyapunovEstimate lyapunov;
    std::optional<GateResult> gate;
    std::map<unsigned, MomentResult> moments;
};

[[nodiscard]] StationarityReport check_stationarity(const ModelSpec& spec, std::size_t n_steps, std::size_t n_reps,
                                                    std::uint64_t seed, unsigned max_moment_order,
                                                    std::size_t mc_samples);

}  // namespace bekk
