#include "bekk/simulate.hpp"

#include "bekk/error.hpp"
#include "bekk/io.hpp"

#include <cmath>

namespace bekk {

std::vector<double> PathSample::column(std::size_t i) const {
    std::vector<double> out(T);
    for (std::size_t t = 0; t < T; ++t) out[t] = data[t * d + i];
    return out;
}

PathSample make_path(std::size_t d, std::vector<double> data) {
    if (d == 0 || data.size() % d != 0) throw Error(ErrorCode::DimensionMismatch, "path data is not a multiple of d");
    PathSample p;
    p.d = d;
    p.T = data.size() / d;
    p.data = std::move(data);
    return p;
}

namespace {

PathSample empty_path(const ModelSpec& spec, std::size_t T, std::size_t burnin, std::uint64_t seed) {
    if (T == 0) throw Error(ErrorCode::Domain, "path length T must be at least 1");
    PathSample p;
    p.d = spec.d;
    p.seed = seed;
    p.burnin = burnin;
    p.spec_digest = spec_digest(spec);
    p.data.reserve(T * spec.d);
    return p;
}

bool blown_up(std::span<const double> x) {
    for (double v : x)
        if (!(std::abs(v) <= kDivergenceThreshold)) return true;
    return false;
}

// Once the ARCH part dwarfs C by more than double precision can resolve,
// H_t is numerically rank-deficient and the path is treated as divergent.
constexpr double kConditioningRatio = 1e15;

bool swamped(std::span<const double> h, double c_scale) {
    for (double v : h)
        if (!(std::abs(v) <= kConditioningRatio * c_scale)) return true;
    return false;
}

}  // namespace

PathSample simulate_sre(const ModelSpec& spec, std::size_t T, std::size_t burnin, std::uint64_t seed) {
    PathSample path = empty_path(spec, T, burnin, seed);
    const std::size_t d = spec.d;
    CoefficientSampler sampler(spec);
    Stream stream(seed);

    Matrix mtilde(d, d);
    Vector x(d, 0.0), next(d), q(d);
    for (std::size_t step = 1; step <= burnin + T; ++step) {
        sampler.draw(stream, mtilde, q);
        multiply_into(mtilde, x, next);
        for (std::size_t i = 0; i < d; ++i) x[i] = next[i] + q[i];
        if (blown_up(x)) {
            path.diverged = true;
            path.diverged_at = step;
            break;
        }
        if (step > burnin) path.data.insert(path.data.end(), x.begin(), x.end());
    }
    path.T = path.data.size() / d;
    return path;
}

PathSample simulate_h_form(const ModelSpec& spec, std::size_t T, std::size_t burnin, std::uint64_t seed) {
    if (spec.A0) throw Error(ErrorCode::Inapplicable, "the conditional-covariance form has no autoregressive term");
    PathSample path = empty_path(spec, T, burnin, seed);
    const std::size_t d = spec.d;
    Stream stream(seed);

    Vector x(d, 0.0), ax(d), z(d);
    Matrix h(d, d);
    double c_scale = 0.0;
    for (double v : spec.C.data()) c_scale = std::max(c_scale, std::abs(v));
    for (std::size_t step = 1; step <= burnin + T; ++step) {
        h = spec.C;
        for (const Matrix& a : spec.A) {
            multiply_into(a, x, ax);
            for (std::size_t r = 0; r < d; ++r)
                for (std::size_t c = 0; c < d; ++c) h(r, c) += ax[r] * ax[c];
        }
        Matrix l;
        try {
            l = cholesky(h);
        } catch (const Error& e) {
            if (swamped(h.data(), c_scale)) {
                path.diverged = true;
                path.diverged_at = step;
                break;
            }
            throw Error(ErrorCode::Numerical, std::string("conditional covariance lost definiteness: ") + e.what());
        }
        for (double& v : z) v = stream.normal();
        multiply_into(l, z, x);
        if (blown_up(x)) {
            path.diverged = true;
            path.diverged_at = step;
            break;
        }
        if (step > burnin) path.data.insert(path.data.end(), x.begin(), x.end());
    }
    path.T = path.data.size() / d;
    return path;
}

TailChainSample simulate_tail_chain(const ModelSpec& spec, std::span<const double> y0, std::size_t K,
                                    std::uint64_t seed) {
    if (spec.A0) throw Error(ErrorCode::Inapplicable, "the tail chain is defined for the pure ARCH case (A0 absent)");
    if (y0.size() != spec.d) throw Error(ErrorCode::DimensionMismatch, "y0 must have d entries");
    const std::size_t d = spec.d;
    TailChainSample chain;
    chain.K = K;
    chain.d = d;
    chain.data.assign(y0.begin(), y0.end());
    chain.data.reserve((K + 1) * d);

    CoefficientSampler sampler(spec);
    Stream stream(seed);
    Matrix mtilde(d, d);
    Vector y(y0.begin(), y0.end()), next(d);
    for (std::size_t k = 0; k < K; ++k) {
        sampler.draw_multiplier(stream, mtilde);
        multiply_into(mtilde, y, next);
        y.swap(next);
        chain.data.insert(chain.data.end(), y.begin(), y.end());
    }
    return chain;
}

}  // namespace bekk
