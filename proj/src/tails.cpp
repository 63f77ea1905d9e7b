#include "bekk/tails.hpp"

#include "bekk/error.hpp"
#include "bekk/parallel.hpp"
#include "bekk/stationarity.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/digamma.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace bekk {

double log_gaussian_abs_moment(double alpha) {
    if (!(alpha > 0.0)) throw Error(ErrorCode::Domain, "absolute moment order must be positive");
    return 0.5 * alpha * std::numbers::ln2 + std::lgamma(0.5 * (alpha + 1.0)) - 0.5 * std::log(std::numbers::pi);
}

double gaussian_abs_moment(double alpha) {
    return std::exp(log_gaussian_abs_moment(alpha));
}

double solve_alpha(double a) {
    const double abs_a = std::abs(a);
    if (!(abs_a > 0.0) || !(abs_a < threshold_constant())) {
        std::ostringstream os;
        os << "no positive tail index: |a| = " << abs_a << " is outside (0, " << threshold_constant() << ")";
        throw Error(ErrorCode::Domain, os.str());
    }
    const double log_a = std::log(abs_a);
    auto h = [&](double alpha) { return log_gaussian_abs_moment(alpha) + alpha * log_a; };
    auto dh = [&](double alpha) { return 0.5 * std::numbers::ln2 + 0.5 * boost::math::digamma(0.5 * (alpha + 1.0)) + log_a; };

    // h is convex with h(0) = 0 and h'(0) < 0: negative just right of 0, then
    // one sign change.
    double lo = 1e-6;
    double hi = 64.0;
    if (h(lo) >= 0.0) return lo;
    while (h(hi) <= 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e8) throw Error(ErrorCode::Numerical, "tail-index bracket expansion failed");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) < 0.0 ? lo : hi) = mid;
    }
    double root = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
        const double slope = dh(root);
        if (!(slope > 0.0)) break;
        const double next = root - h(root) / slope;
        if (!(next > lo - 1e-12 * hi && next < hi + 1e-12 * hi)) break;
        root = next;
    }
    return root;
}

double solve_coeff(double alpha) {
    return std::exp(-log_gaussian_abs_moment(alpha) / alpha);
}

double alpha_cross(double alpha_i, double alpha_j) {
    if (!(alpha_i > 0.0) || !(alpha_j > 0.0)) throw Error(ErrorCode::Domain, "tail indices must be positive");
    return alpha_i * alpha_j / (alpha_i + alpha_j);
}

double abs_moment_log_weighted(double a, double alpha) {
    if (!(alpha > 0.0)) throw Error(ErrorCode::Domain, "moment order must be positive");
    const double abs_a = std::abs(a);
    if (!(abs_a > 0.0)) throw Error(ErrorCode::Domain, "coefficient must be non-zero");
    const double log_a = std::log(abs_a);
    const double norm = 2.0 / std::sqrt(2.0 * std::numbers::pi);
    // 2 * int_0^inf (a m)^alpha log(a m) phi(m) dm, split at m = 1.
    auto f = [&](double m) {
        if (m <= 0.0) return 0.0;
        const double lm = std::log(m);
        return norm * std::exp(alpha * (log_a + lm) - 0.5 * m * m) * (log_a + lm);
    };
    boost::math::quadrature::tanh_sinh<double> inner;
    boost::math::quadrature::exp_sinh<double> outer;
    return inner.integrate(f, 0.0, 1.0) + outer.integrate(f, 1.0, std::numeric_limits<double>::infinity());
}

GoldieEstimate goldie_constant_mc(const ModelSpec& spec, std::size_t i, double alpha_i, std::size_t T, std::size_t reps,
                                  std::uint64_t seed, std::size_t burnin) {
    if (!is_diagonal(spec)) throw Error(ErrorCode::Inapplicable, "Goldie constant requires a Diagonal spec");
    if (i >= spec.d) throw Error(ErrorCode::DimensionMismatch, "marginal index out of range");
    if (T < 2 || reps < 2) throw Error(ErrorCode::Domain, "goldie_constant_mc needs T >= 2 and reps >= 2");
    const double a = spec.A[0](i, i);
    if (std::abs(a) < kGoldieMinCoeff)
        throw Error(ErrorCode::Domain, "|A_ii| below 0.05 is outside the valid Monte Carlo regime");
    const double residual = log_gaussian_abs_moment(alpha_i) + alpha_i * std::log(std::abs(a));
    if (std::abs(residual) > 1e-6)
        throw Error(ErrorCode::Domain, "alpha_i does not solve E|A_ii m|^alpha = 1 (residual " + std::to_string(residual) + ")");

    const double sd_q = std::sqrt(spec.C(i, i));
    const std::size_t half = T / 2;
    std::vector<double> first(reps), second(reps), total(reps);
    parallel_for(reps, [&](std::size_t r) {
        Stream stream = Stream::derive(seed, r);
        double x = 0.0;
        for (std::size_t t = 0; t < burnin; ++t) x = a * stream.normal() * x + sd_q * stream.normal();
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t t = 0; t < T; ++t) {
            const double prev = a * stream.normal() * x;
            x = prev + sd_q * stream.normal();
            const double term = std::pow(std::abs(x), alpha_i) - std::pow(std::abs(prev), alpha_i);
            (t < half ? s1 : s2) += term;
        }
        first[r] = s1 / static_cast<double>(half);
        second[r] = s2 / static_cast<double>(T - half);
        total[r] = (s1 + s2) / static_cast<double>(T);
    });

    auto mean_se = [&](const std::vector<double>& v) {
        const double n = static_cast<double>(v.size());
        const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
        double ss = 0.0;
        for (double x : v) ss += (x - mean) * (x - mean);
        return McEstimate{mean, std::sqrt(ss / (n - 1.0) / n)};
    };
    const McEstimate num = mean_se(total);
    const McEstimate n1 = mean_se(first);
    const McEstimate n2 = mean_se(second);

    GoldieEstimate out;
    out.numerator = num.estimate;
    out.denominator = 2.0 * alpha_i * abs_moment_log_weighted(a, alpha_i);
    out.value.estimate = num.estimate / out.denominator;
    out.value.std_error = num.std_error / std::abs(out.denominator);
    out.burnin_sensitive = std::abs(n1.estimate - n2.estimate) > 3.0 * std::hypot(n1.std_error, n2.std_error);
    return out;
}

double hill_abs(std::span<const double> sample, std::size_t k) {
    const std::size_t n = sample.size();
    if (k < 1 || k >= n) throw Error(ErrorCode::Domain, "Hill needs 1 <= k < sample size");
    std::vector<double> abs_values(n);
    std::transform(sample.begin(), sample.end(), abs_values.begin(), [](double x) { return std::abs(x); });
    std::nth_element(abs_values.begin(), abs_values.begin() + static_cast<std::ptrdiff_t>(k), abs_values.end(),
                     std::greater<>());
    const double threshold = abs_values[k];
    if (!(threshold > 0.0)) throw Error(ErrorCode::Degenerate, "Hill threshold order statistic is zero");
    double sum = 0.0;
    for (std::size_t j = 0; j < k; ++j) sum += std::log(abs_values[j] / threshold);
    if (!(sum > 0.0)) throw Error(ErrorCode::Degenerate, "Hill log-spacings vanish (tied upper order statistics)");
    return static_cast<double>(k) / sum;
}

double hill(const PathSample& path, std::size_t i, std::size_t k) {
    if (i >= path.d) throw Error(ErrorCode::DimensionMismatch, "marginal index out of range");
    const auto col = path.column(i);
    return hill_abs(col, k);
}

std::vector<std::size_t> default_k_grid(std::size_t T) {
    if (T < 2) throw Error(ErrorCode::Domain, "k grid needs T >= 2");
    const double root = std::sqrt(static_cast<double>(T));
    const double lo = std::max(1.0, 0.5 * root);
    const double hi = std::min(static_cast<double>(T - 1), 4.0 * root);
    constexpr int kPoints = 16;
    std::vector<std::size_t> grid;
    for (int p = 0; p < kPoints; ++p) {
        const double k = lo * std::pow(hi / lo, static_cast<double>(p) / (kPoints - 1));
        const auto kk = std::clamp<std::size_t>(static_cast<std::size_t>(std::lround(k)), 1, T - 1);
        if (grid.empty() || grid.back() != kk) grid.push_back(kk);
    }
    return grid;
}

HillPlateau hill_plateau(std::span<const double> sample, std::span<const std::size_t> k_grid) {
    if (k_grid.empty()) throw Error(ErrorCode::Domain, "empty k grid");
    HillPlateau out;
    out.k.assign(k_grid.begin(), k_grid.end());
    for (std::size_t k : k_grid) out.alpha.push_back(hill_abs(sample, k));
    std::vector<double> sorted = out.alpha;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    out.plateau = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
    return out;
}

TailProfile tail_profile(const ModelSpec& spec) {
    if (spec.A0) throw Error(ErrorCode::Inapplicable, "tail analysis is defined for the pure ARCH case (A0 absent)");
    TailProfile profile;
    profile.param_class = classify(spec);
    if (profile.param_class.has(ParamLabel::Diagonal)) {
        for (std::size_t i = 0; i < spec.d; ++i) profile.alpha.push_back(solve_alpha(spec.A[0](i, i)));
    } else if (profile.param_class.has(ParamLabel::Similarity)) {
        const Matrix gram = spec.A[0].transpose() * spec.A[0];
        profile.alpha.assign(spec.d, solve_alpha(std::sqrt(gram(0, 0))));
    } else {
        throw Error(ErrorCode::Inapplicable,
                    "no computable tail index for this class; supply a path to use the Hill route");
    }
    return profile;
}

}  // namespace bekk
