#include "bekk/covariance.hpp"
#include "bekk/error.hpp"
#include "bekk/simulate.hpp"
#include "bekk/tails.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace bekk;

TEST_CASE("sample covariance examples") {
    const PathSample p = make_path(2, {1.0, 2.0, -1.0, 0.0, 3.0, -2.0});
    const Matrix g = sample_cov(p);
    CHECK(g(0, 0) == doctest::Approx(11.0 / 3.0));
    CHECK(g(1, 1) == doctest::Approx(8.0 / 3.0));
    CHECK(g(0, 1) == doctest::Approx(-4.0 / 3.0));
    CHECK(g(1, 0) == g(0, 1));
    CHECK_THROWS_AS((void)sample_cov(make_path(2, {})), Error);
}

TEST_CASE("sample covariance is positive semidefinite") {
    Stream s(6);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> data(3 * 20);
        for (double& v : data) v = s.normal();
        const Matrix g = sample_cov(make_path(3, data));
        for (int probe = 0; probe < 20; ++probe) {
            const std::vector<double> u{s.normal(), s.normal(), s.normal()};
            double q = 0.0;
            for (std::size_t r = 0; r < 3; ++r)
                for (std::size_t c = 0; c < 3; ++c) q += u[r] * g(r, c) * u[c];
            CHECK(q >= -1e-12);
        }
    }
}

TEST_CASE("predicted fluctuation slope regimes") {
    CHECK(predicted_fluctuation_slope(4.0) == -0.5);
    CHECK(predicted_fluctuation_slope(2.0) == -0.5);
    CHECK(predicted_fluctuation_slope(1.5) == doctest::Approx(-1.0 / 3.0));
    CHECK(predicted_fluctuation_slope(0.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS((void)predicted_fluctuation_slope(0.0), Error);
}

TEST_CASE("cross-tail check on a diagonal spec") {
    const ModelSpec spec = make_single_term(Matrix::diagonal(std::vector<double>{solve_coeff(3.0), solve_coeff(4.0)}),
                                            Matrix::from_rows({{1, 0.3}, {0.3, 1}}));
    const TailProfile profile = tail_profile(spec);
    const PathSample p = simulate_sre(spec, 500000, kDefaultBurnin, 31);
    const auto entries = cross_tail_check(p, profile, 2000);
    REQUIRE(entries.size() == 3);
    CHECK(entries[0].predicted == doctest::Approx(1.5));
    CHECK(entries[1].predicted == doctest::Approx(12.0 / 7.0));
    CHECK(entries[2].predicted == doctest::Approx(2.0));
    for (const auto& e : entries) CHECK(e.within_band);
}

TEST_CASE("fluctuation scan preconditions") {
    const ModelSpec spec = make_single_term(Matrix::diagonal(std::vector<double>{0.5, 0.4}), Matrix::identity(2));
    const TailProfile profile = tail_profile(spec);
    CHECK_THROWS_AS((void)fluctuation_scan(spec, profile, {2000}, 100, 1), Error);
    CHECK_THROWS_AS((void)fluctuation_scan(spec, profile, {500, 2000}, 100, 1), Error);
    CHECK_THROWS_AS((void)fluctuation_scan(spec, profile, {1000, 2000}, 10, 1), Error);
}

TEST_CASE("fluctuation scan is reproducible and produces one exponent per pair") {
    const ModelSpec spec = make_single_term(Matrix::diagonal(std::vector<double>{0.5, 0.4}), Matrix::identity(2));
    const TailProfile profile = tail_profile(spec);
    const auto a = fluctuation_scan(spec, profile, {1000, 4000}, 50, 3, 500);
    const auto b = fluctuation_scan(spec, profile, {1000, 4000}, 50, 3, 500);
    REQUIRE(a.exponents.size() == 3);
    CHECK(a.points.size() == 6);
    for (std::size_t e = 0; e < 3; ++e) {
        CHECK(a.exponents[e].slope == b.exponents[e].slope);
        CHECK(a.exponents[e].predicted_slope == -0.5);
    }
}
