#include "bekk/covariance.hpp"
#include "bekk/error.hpp"
#include "bekk/simulate.hpp"
#include "bekk/stationarity.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace bekk;

namespace {

ModelSpec diag_spec(double a1, double a2, const Matrix& c = Matrix::identity(2)) {
    return make_single_term(Matrix::diagonal(std::vector<double>{a1, a2}), c);
}

double second_moment(const PathSample& p, std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t t = 0; t < p.T; ++t) s += p.at(t, i) * p.at(t, j);
    return s / static_cast<double>(p.T);
}

}  // namespace

TEST_CASE("degenerate recursion gives iid Gaussian states") {
    const ModelSpec spec = diag_spec(0.0, 0.0);
    for (auto sim : {&simulate_sre, &simulate_h_form}) {
        const PathSample p = sim(spec, 200000, 100, 5);
        CHECK(p.T == 200000);
        for (std::size_t i = 0; i < 2; ++i) {
            const auto col = p.column(i);
            CHECK(std::abs(oracle::mean(col)) < 4.0 / std::sqrt(200000.0));
            CHECK(oracle::within_rel(second_moment(p, i, i), 1.0, 0.02));
        }
    }
}

TEST_CASE("stationary variances match the diagonal fixed point") {
    const ModelSpec spec = diag_spec(0.5, 0.6);
    const PathSample p = simulate_sre(spec, 200000, kDefaultBurnin, 17);
    CHECK(oracle::within_rel(second_moment(p, 0, 0), 1.0 / 0.75, 0.05));
    CHECK(oracle::within_rel(second_moment(p, 1, 1), 1.0 / 0.64, 0.05));
}

TEST_CASE("covariance-form simulator: scalar spec and univariate ARCH(1)") {
    const ModelSpec scalar = make_single_term(0.5 * Matrix::identity(2), Matrix::identity(2));
    const PathSample p = simulate_h_form(scalar, 200000, kDefaultBurnin, 23);
    CHECK(oracle::within_rel(second_moment(p, 0, 0), 1.0 / 0.75, 0.05));
    CHECK(oracle::within_rel(second_moment(p, 1, 1), 1.0 / 0.75, 0.05));

    // d = 1: H_t = C + a X^2 with A = sqrt(a).
    const double a = 0.5, c = 2.0;
    const ModelSpec arch = make_single_term(Matrix(1, 1, std::sqrt(a)), Matrix(1, 1, c));
    const PathSample q = simulate_h_form(arch, 200000, kDefaultBurnin, 29);
    CHECK(oracle::within_rel(second_moment(q, 0, 0), c / (1.0 - a), 0.05));
}

TEST_CASE("both simulators agree in first and second moments") {
    for (const ModelSpec& spec : {make_single_term(0.55 * Matrix::identity(2), Matrix::from_rows({{1, 0.2}, {0.2, 1}})),
                                  diag_spec(0.3, 0.6, Matrix::from_rows({{1, -0.4}, {-0.4, 2}}))}) {
        const PathSample a = simulate_sre(spec, 200000, kDefaultBurnin, 31);
        const PathSample b = simulate_h_form(spec, 200000, kDefaultBurnin, 37);
        for (std::size_t i = 0; i < 2; ++i) {
            const auto ca = a.column(i), cb = b.column(i);
            const double se_mean = std::hypot(oracle::batch_means_se(ca), oracle::batch_means_se(cb));
            CHECK(std::abs(oracle::mean(ca) - oracle::mean(cb)) < 5.0 * se_mean);
            for (std::size_t j = i; j < 2; ++j) {
                std::vector<double> pa(a.T), pb(b.T);
                for (std::size_t t = 0; t < a.T; ++t) {
                    pa[t] = a.at(t, i) * a.at(t, j);
                    pb[t] = b.at(t, i) * b.at(t, j);
                }
                const double se = std::hypot(oracle::batch_means_se(pa), oracle::batch_means_se(pb));
                CHECK(std::abs(oracle::mean(pa) - oracle::mean(pb)) < 5.0 * se);
            }
        }
    }
}

TEST_CASE("empirical covariance solves the second-moment fixed point") {
    const ModelSpec spec = make_single_term(Matrix::from_rows({{0.4, 0.2}, {-0.1, 0.5}}), Matrix::from_rows({{1, 0.3}, {0.3, 1}}));
    REQUIRE(moment_condition(spec, 1, 0, 0).pass);
    const Matrix gamma = sample_cov(simulate_sre(spec, 400000, kDefaultBurnin, 41));
    // (I - A (x) A) vec(Gamma) = vec(C).
    const Matrix lhs = Matrix::identity(4) - kron(spec.A[0], spec.A[0]);
    const Vector resid = lhs * vec(gamma);
    const Vector c = vec(spec.C);
    for (std::size_t r = 0; r < 4; ++r) CHECK(oracle::within_rel(resid[r], c[r], 0.05));
}

TEST_CASE("simulation is bit-reproducible") {
    const ModelSpec spec = diag_spec(0.7, 0.2);
    const PathSample a = simulate_sre(spec, 1000, 50, 7);
    const PathSample b = simulate_sre(spec, 1000, 50, 7);
    CHECK(a.data == b.data);
    CHECK(a.spec_digest == b.spec_digest);
    CHECK(simulate_sre(spec, 1000, 50, 8).data != a.data);
    CHECK(simulate_h_form(spec, 1000, 50, 7).data == simulate_h_form(spec, 1000, 50, 7).data);
}

TEST_CASE("supercritical spec raises the divergence flag") {
    const ModelSpec spec = make_single_term(2.0 * Matrix::identity(2), Matrix::identity(2));
    const PathSample p = simulate_sre(spec, 10000, kDefaultBurnin, 1);
    CHECK(p.diverged);
    CHECK(p.diverged_at > 0);
    CHECK(p.diverged_at <= kDefaultBurnin + 10000);
    CHECK(p.T < 10000);
    for (double v : p.data) CHECK(std::isfinite(v));

    const PathSample h = simulate_h_form(spec, 10000, kDefaultBurnin, 1);
    CHECK(h.diverged);
}

TEST_CASE("simulator preconditions") {
    const ModelSpec spec = diag_spec(0.5, 0.5);
    CHECK_THROWS_AS((void)simulate_sre(spec, 0, 10, 1), Error);
    ModelSpec ar = spec;
    ar.A0 = 0.1 * Matrix::identity(2);
    CHECK_NOTHROW((void)simulate_sre(ar, 10, 10, 1));
    CHECK_THROWS_AS((void)simulate_h_form(ar, 10, 10, 1), Error);
    CHECK_THROWS_AS((void)simulate_tail_chain(ar, std::vector<double>{1, 1}, 5, 1), Error);
}

TEST_CASE("tail chain examples") {
    const ModelSpec diag = diag_spec(0.9, 0.3);
    const auto zero = simulate_tail_chain(diag, std::vector<double>{0, 0}, 20, 3);
    CHECK(zero.rows() == 21);
    for (double v : zero.data) CHECK(v == 0.0);

    const auto chain = simulate_tail_chain(diag, std::vector<double>{1, 1}, 30, 3);
    CHECK(chain.row(0)[0] == 1.0);
    for (std::size_t k = 1; k < chain.rows(); ++k) {
        const auto y = chain.row(k);
        CHECK(y[0] / y[1] == doctest::Approx(std::pow(3.0, static_cast<double>(k))).epsilon(1e-12));
        // Common multiplier: log-increments net of log|A_ii| coincide.
        const auto prev = chain.row(k - 1);
        const double inc0 = std::log(std::abs(y[0])) - std::log(std::abs(prev[0])) - std::log(0.9);
        const double inc1 = std::log(std::abs(y[1])) - std::log(std::abs(prev[1])) - std::log(0.3);
        CHECK(inc0 == doctest::Approx(inc1).epsilon(1e-9));
    }
}

TEST_CASE("tail chain of a scalar spec scales the Euclidean norm by |a m|") {
    const double a = 1.3;
    const ModelSpec spec = make_single_term(a * Matrix::identity(3), Matrix::identity(3));
    const std::vector<double> y0{0.3, -1.2, 2.0};
    const auto chain = simulate_tail_chain(spec, y0, 15, 11);
    // Replay the multiplier stream: one normal per step (l = 1).
    Stream replay(11);
    double factor = 1.0;
    for (std::size_t k = 1; k < chain.rows(); ++k) {
        factor *= std::abs(a * replay.normal());
        CHECK(euclidean_norm(chain.row(k)) / euclidean_norm(y0) == doctest::Approx(factor).epsilon(1e-12));
    }
}
