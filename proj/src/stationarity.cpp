#include "bekk/stationarity.hpp"

#include "bekk/error.hpp"
#include "bekk/parallel.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace bekk {

double threshold_constant() {
    return std::exp(0.5 * (kEulerGamma + std::log(2.0)));
}

LyapunovEstimate lyapunov_mc(const ModelSpec& spec, std::size_t n_steps, std::size_t n_reps, std::uint64_t seed) {
    if (n_steps < 100) throw Error(ErrorCode::Domain, "lyapunov_mc needs n_steps >= 100");
    if (n_reps < 2) throw Error(ErrorCode::Domain, "lyapunov_mc needs n_reps >= 2 for a standard error");
    const std::size_t d = spec.d;

    std::vector<double> per_rep(n_reps);
    parallel_for(n_reps, [&](std::size_t rep) {
        Stream stream = Stream::derive(seed, rep);
        CoefficientSampler sampler(spec);
        Matrix mtilde(d, d);
        Vector v(d), w(d);
        for (double& x : v) x = stream.normal();
        double norm = euclidean_norm(v);
        for (double& x : v) x /= norm;

        double log_growth = 0.0;
        for (std::size_t k = 0; k < kLyapunovTransient + n_steps; ++k) {
            sampler.draw_multiplier(stream, mtilde);
            multiply_into(mtilde, v, w);
            norm = euclidean_norm(w);
            if (norm == 0.0) {
                // Products hit the zero matrix: exponent is -infinity.
                log_growth = -std::numeric_limits<double>::infinity();
                break;
            }
            if (k >= kLyapunovTransient) log_growth += std::log(norm);
            for (std::size_t i = 0; i < d; ++i) v[i] = w[i] / norm;
        }
        per_rep[rep] = log_growth / static_cast<double>(n_steps);
    });

    const double n = static_cast<double>(n_reps);
    const double mean = std::accumulate(per_rep.begin(), per_rep.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : per_rep) ss += (x - mean) * (x - mean);
    LyapunovEstimate out;
    out.estimate = mean;
    out.std_error = std::isfinite(mean) ? std::sqrt(ss / (n - 1.0)) / std::sqrt(n) : 0.0;
    out.n_steps = n_steps;
    out.n_reps = n_reps;
    return out;
}

GateResult gate_l1(const ModelSpec& spec) {
    if (spec.l != 1 || spec.A0)
        throw Error(ErrorCode::Inapplicable, "closed-form gate applies only to l = 1 without an autoregressive term");
    GateResult g;
    g.rho = spectral_radius(spec.A[0]);
    g.threshold = threshold_constant();
    g.pass = g.rho < g.threshold;
    return g;
}

MomentResult moment_condition(const ModelSpec& spec, unsigned n, std::size_t mc_samples, std::uint64_t seed) {
    if (n == 0) throw Error(ErrorCode::Domain, "moment order n must be >= 1");
    const unsigned power = 2 * n;
    double size = 1.0;
    for (unsigned i = 0; i < power; ++i) size *= static_cast<double>(spec.d);
    if (size > static_cast<double>(kMomentSizeLimit))
        throw Error(ErrorCode::SizeLimit, "d^(2n) = " + std::to_string(static_cast<long long>(size)) + " exceeds " +
                                              std::to_string(kMomentSizeLimit));

    MomentResult out;
    if (n == 1) {
        // Cross terms vanish: the m_i are independent with zero mean.
        Matrix sum = spec.A0 ? kron(*spec.A0, *spec.A0) : Matrix(spec.d * spec.d, spec.d * spec.d);
        for (const Matrix& a : spec.A) sum += kron(a, a);
        out.rho = spectral_radius(sum);
        out.exact = true;
    } else {
        if (mc_samples == 0) throw Error(ErrorCode::Domain, "moment_condition needs mc_samples >= 1 for n >= 2");
        const std::size_t dim = static_cast<std::size_t>(size);
        Matrix sum(dim, dim);
        CoefficientSampler sampler(spec);
        Stream stream(seed);
        Matrix mtilde(spec.d, spec.d);
        for (std::size_t s = 0; s < mc_samples; ++s) {
            sampler.draw_multiplier(stream, mtilde);
            sum += kron_power(mtilde, power);
        }
        sum *= 1.0 / static_cast<double>(mc_samples);
        out.rho = spectral_radius(sum);
        out.exact = false;
    }
    out.pass = out.rho < 1.0;
    return out;
}

StationarityReport check_stationarity(const ModelSpec& spec, std::size_t n_steps, std::size_t n_reps,
                                      std::uint64_t seed, unsigned max_moment_order, std::size_t mc_samples) {
    StationarityReport report;
    report.lyapunov = lyapunov_mc(spec, n_steps, n_reps, seed);
    if (spec.l == 1 && !spec.A0) report.gate = gate_l1(spec);
    for (unsigned n = 1; n <= max_moment_order; ++n) {
        try {
            report.moments[n] = moment_condition(spec, n, mc_samples, mix64(seed + n));
        } catch (const Error& e) {
            if (e.code() != ErrorCode::SizeLimit) throw;
            break;
        }
    }
    return report;
}

}  // namespace bekk
