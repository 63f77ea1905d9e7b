#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library's numerical routines.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/digamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace oracle {

/// int |m|^alpha phi(m) dm by double-exponential quadrature.
inline double abs_moment_quadrature(double alpha) {
    auto f = [alpha](double m) {
        if (m <= 0.0) return 0.0;
        return 2.0 * std::exp(alpha * std::log(m) - 0.5 * m * m) / std::sqrt(2.0 * std::numbers::pi);
    };
    boost::math::quadrature::tanh_sinh<double> inner;
    boost::math::quadrature::exp_sinh<double> outer;
    const double tol = 1e-14;
    return inner.integrate(f, 0.0, 1.0, tol) + outer.integrate(f, 1.0, std::numeric_limits<double>::infinity(), tol);
}

/// E[|a m|^alpha log|a m|] = d/dalpha E|a m|^alpha in closed form.
inline double log_weighted_moment_closed_form(double a, double alpha) {
    const double moment = std::pow(std::abs(a), alpha) * std::exp(0.5 * alpha * std::numbers::ln2 +
                                                                  std::lgamma(0.5 * (alpha + 1.0))) /
                          std::sqrt(std::numbers::pi);
    return moment * (std::log(std::abs(a)) + 0.5 * std::numbers::ln2 + 0.5 * boost::math::digamma(0.5 * (alpha + 1.0)));
}

/// |actual - expected| <= rel * |expected|.
inline bool within_rel(double actual, double expected, double rel) {
    return std::abs(actual - expected) <= rel * std::abs(expected);
}

inline double mean(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

inline double sample_sd(std::span<const double> v) {
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

/// Standard error of the mean of a serially dependent series by
/// non-overlapping batch means.
inline double batch_means_se(std::span<const double> v, std::size_t batches = 100) {
    const std::size_t len = v.size() / batches;
    std::vector<double> means(batches);
    for (std::size_t b = 0; b < batches; ++b) means[b] = mean(v.subspan(b * len, len));
    return sample_sd(means) / std::sqrt(static_cast<double>(batches));
}

/// Stationary covariance of X_t = m_t A X_{t-1} + Q_t with diagonal A:
/// Gamma_ij = C_ij / (1 - a_i a_j).
inline double diagonal_fixed_point(double c_ij, double a_i, double a_j) {
    return c_ij / (1.0 - a_i * a_j);
}

}  // namespace oracle
