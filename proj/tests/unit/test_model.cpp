#include "bekk/error.hpp"
#include "bekk/io.hpp"
#include "bekk/model.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace bekk;

namespace {

ModelSpec raw_spec(std::size_t d, std::vector<Matrix> a, Matrix c) {
    ModelSpec s;
    s.d = d;
    s.l = a.size();
    s.A = std::move(a);
    s.C = std::move(c);
    return s;
}

ErrorCode code_of(const ModelSpec& s) {
    try {
        (void)validate_spec(s);
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected validation to fail");
    return ErrorCode::Io;
}

ModelSpec id_spec(double a1, double a2, double a3, double a4) {
    return validate_spec(raw_spec(2,
                                  {Matrix::from_rows({{a1, 0}, {0, 0}}), Matrix::from_rows({{0, 0}, {a2, 0}}),
                                   Matrix::from_rows({{0, a3}, {0, 0}}), Matrix::from_rows({{0, 0}, {0, a4}})},
                                  Matrix::identity(2)));
}

}  // namespace

TEST_CASE("validate_spec accepts and rejects with distinct errors") {
    const ModelSpec ok = raw_spec(2, {Matrix::diagonal(std::vector<double>{0.5, 0.6})}, Matrix::identity(2));
    CHECK(validate_spec(ok) == ok);

    const auto indefinite = code_of(raw_spec(2, {Matrix::identity(2)}, Matrix::from_rows({{1, 2}, {2, 1}})));
    const auto dims = code_of(raw_spec(2, {Matrix::identity(3)}, Matrix::identity(2)));
    const auto none = code_of(raw_spec(2, {}, Matrix::identity(2)));
    CHECK(indefinite == ErrorCode::NotPositiveDefinite);
    CHECK(dims == ErrorCode::DimensionMismatch);
    CHECK(none == ErrorCode::NoTerms);

    ModelSpec l_mismatch = ok;
    l_mismatch.l = 2;
    CHECK(code_of(l_mismatch) == ErrorCode::DimensionMismatch);
    ModelSpec bad_a0 = ok;
    bad_a0.A0 = Matrix::identity(3);
    CHECK(code_of(bad_a0) == ErrorCode::DimensionMismatch);
}

TEST_CASE("classify: scalar, diagonal, similarity") {
    const auto scalar = classify(make_single_term(0.7 * Matrix::identity(2), Matrix::identity(2)));
    CHECK(scalar.labels == std::vector{ParamLabel::Scalar, ParamLabel::Diagonal, ParamLabel::Similarity});

    const auto diag = classify(make_single_term(Matrix::diagonal(std::vector<double>{0.8, 0.5}), Matrix::identity(2)));
    CHECK(diag.labels == std::vector{ParamLabel::Diagonal});

    const double c = std::cos(1.1), s = std::sin(1.1);
    const auto rot = classify(make_single_term(Matrix::from_rows({{0.9 * c, -0.9 * s}, {0.9 * s, 0.9 * c}}), Matrix::identity(2)));
    CHECK(rot.labels == std::vector{ParamLabel::Similarity});
    CHECK(rot.details.at(ParamLabel::Similarity).find("0.9") != std::string::npos);

    // Negative scalar: -a I = a (-I) is still a similarity.
    const auto neg = classify(make_single_term(-0.4 * Matrix::identity(3), Matrix::identity(3)));
    CHECK(neg.has(ParamLabel::Scalar));
    CHECK(neg.has(ParamLabel::Similarity));

    const auto zero = classify(make_single_term(Matrix(2, 2), Matrix::identity(2)));
    CHECK(zero.labels == std::vector{ParamLabel::Diagonal});
}

TEST_CASE("classify: scalar specs always carry Diagonal and Similarity") {
    Stream s(3);
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t d = 1 + rep % 4;
        double a = 2.0 * s.normal();
        if (std::abs(a) < 1e-3) a = 0.5;
        const auto pc = classify(make_single_term(a * Matrix::identity(d), Matrix::identity(d)));
        CHECK(pc.has(ParamLabel::Scalar));
        CHECK(pc.has(ParamLabel::Diagonal));
        CHECK(pc.has(ParamLabel::Similarity));
    }
}

TEST_CASE("classify: ID candidate and general") {
    const auto id = classify(id_spec(0.3, -0.2, 0.5, 0.4));
    CHECK(id.labels == std::vector{ParamLabel::IDCandidate});

    // a_4 = 0 breaks linear independence.
    CHECK(classify(id_spec(0.3, -0.2, 0.5, 0.0)).labels == std::vector{ParamLabel::General});

    const auto two = classify(validate_spec(raw_spec(2, {Matrix::identity(2), Matrix::from_rows({{0, 1}, {0, 0}})}, Matrix::identity(2))));
    CHECK(two.labels == std::vector{ParamLabel::General});
    CHECK(two.details.at(ParamLabel::General).find("l < d^2") != std::string::npos);

    const auto full = classify(make_single_term(Matrix::from_rows({{0.5, 0.2}, {0.1, 0.3}}), Matrix::identity(2)));
    CHECK(full.labels == std::vector{ParamLabel::General});
}

TEST_CASE("assemble_coefficient from captured normals") {
    const double a1 = 0.4, a2 = -0.9;
    const ModelSpec spec = make_single_term(Matrix::diagonal(std::vector<double>{a1, a2}), Matrix::identity(2));
    const Matrix chol = cholesky(spec.C);
    const std::vector<double> m{2.0}, z{1.0, 0.0};
    const auto draw = assemble_coefficient(spec, chol, m, z);
    CHECK(draw.q == Vector{1.0, 0.0});
    CHECK(draw.mtilde == Matrix::diagonal(std::vector<double>{2 * a1, 2 * a2}));

    ModelSpec ar = spec;
    ar.A0 = Matrix::from_rows({{0.1, 0.0}, {0.2, 0.1}});
    ar = validate_spec(ar);
    const auto draw_ar = assemble_coefficient(ar, chol, m, z);
    CHECK(max_abs_diff(draw_ar.mtilde, *ar.A0 + Matrix::diagonal(std::vector<double>{2 * a1, 2 * a2})) == 0.0);
}

TEST_CASE("draw_coefficient is deterministic and matches the sampler") {
    const ModelSpec spec = id_spec(0.3, -0.2, 0.5, 0.4);
    Stream s1(99), s2(99), s3(99);
    CoefficientSampler sampler(spec);
    Matrix mt(2, 2);
    Vector q(2);
    for (int i = 0; i < 50; ++i) {
        const auto a = draw_coefficient(spec, s1);
        const auto b = draw_coefficient(spec, s2);
        CHECK(a.mtilde == b.mtilde);
        CHECK(a.q == b.q);
        sampler.draw(s3, mt, q);
        CHECK(mt == a.mtilde);
        CHECK(q == a.q);
    }
}

TEST_CASE("coefficient draws have zero mean and covariance sum vec(A_i) vec(A_i)^T") {
    ModelSpec raw = raw_spec(2, {Matrix::from_rows({{0.5, 0.2}, {-0.1, 0.3}}), Matrix::from_rows({{0.0, 0.4}, {0.6, -0.2}})},
                             Matrix::from_rows({{1.0, 0.3}, {0.3, 2.0}}));
    const ModelSpec spec = validate_spec(raw);
    constexpr std::size_t n = 100000;
    Stream stream(12345);
    std::vector<std::vector<double>> v(4, std::vector<double>(n));
    std::vector<std::vector<double>> q(2, std::vector<double>(n));
    for (std::size_t s = 0; s < n; ++s) {
        const auto draw = draw_coefficient(spec, stream);
        const Vector vm = vec(draw.mtilde);
        for (std::size_t r = 0; r < 4; ++r) v[r][s] = vm[r];
        q[0][s] = draw.q[0];
        q[1][s] = draw.q[1];
    }
    const double root_n = std::sqrt(static_cast<double>(n));
    for (std::size_t r = 0; r < 4; ++r)
        CHECK(std::abs(oracle::mean(v[r])) < 3.0 * oracle::sample_sd(v[r]) / root_n);

    Matrix expected(4, 4);
    for (const Matrix& a : spec.A) {
        const Vector va = vec(a);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) expected(r, c) += va[r] * va[c];
    }
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            std::vector<double> prod(n);
            for (std::size_t s = 0; s < n; ++s) prod[s] = v[r][s] * v[c][s];
            const double se = oracle::sample_sd(prod) / root_n;
            CHECK(std::abs(oracle::mean(prod) - expected(r, c)) < 4.0 * se + 1e-12);
        }

    // Q ~ N(0, C).
    std::vector<double> q01(n);
    for (std::size_t s = 0; s < n; ++s) q01[s] = q[0][s] * q[1][s];
    CHECK(std::abs(oracle::mean(q01) - 0.3) < 4.0 * oracle::sample_sd(q01) / root_n);
}
