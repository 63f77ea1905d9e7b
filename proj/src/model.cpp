#include "bekk/model.hpp"

#include "bekk/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bekk {

namespace {

void require_shape(const Matrix& m, std::size_t d, const std::string& name) {
    if (m.rows() != d || m.cols() != d) {
        std::ostringstream os;
        os << name << " has shape " << m.rows() << "x" << m.cols() << ", expected " << d << "x" << d;
        throw Error(ErrorCode::DimensionMismatch, os.str());
    }
    if (!m.all_finite()) throw Error(ErrorCode::Domain, name + " has non-finite entries");
}

bool is_diagonal_matrix(const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j && std::abs(m(i, j)) > kStructureTolerance) return false;
    return true;
}

}  // namespace

ModelSpec validate_spec(const ModelSpec& raw) {
    if (raw.l == 0 || raw.A.empty()) throw Error(ErrorCode::NoTerms, "model needs at least one coefficient matrix (l >= 1)");
    if (raw.d == 0) throw Error(ErrorCode::DimensionMismatch, "dimension d must be positive");
    if (raw.A.size() != raw.l) {
        std::ostringstream os;
        os << "l = " << raw.l << " but " << raw.A.size() << " coefficient matrices given";
        throw Error(ErrorCode::DimensionMismatch, os.str());
    }
    for (std::size_t i = 0; i < raw.A.size(); ++i) require_shape(raw.A[i], raw.d, "A[" + std::to_string(i) + "]");
    require_shape(raw.C, raw.d, "C");
    if (raw.A0) require_shape(*raw.A0, raw.d, "A0");
    try {
        (void)cholesky(raw.C);
    } catch (const Error& e) {
        throw Error(ErrorCode::NotPositiveDefinite, std::string("C is not positive definite: ") + e.what());
    }
    return raw;
}

ModelSpec make_single_term(const Matrix& a, const Matrix& c) {
    ModelSpec spec;
    spec.d = c.rows();
    spec.l = 1;
    spec.A = {a};
    spec.C = c;
    return validate_spec(spec);
}

const char* to_string(ParamLabel label) noexcept {
    switch (label) {
        case ParamLabel::Scalar: return "Scalar";
        case ParamLabel::Diagonal: return "Diagonal";
        case ParamLabel::Similarity: return "Similarity";
        case ParamLabel::IDCandidate: return "IDCandidate";
        case ParamLabel::General: return "General";
    }
    return "?";
}

bool ParamClass::has(ParamLabel label) const {
    return std::find(labels.begin(), labels.end(), label) != labels.end();
}

bool is_diagonal(const ModelSpec& spec) {
    return spec.l == 1 && !spec.A0 && is_diagonal_matrix(spec.A[0]);
}

ParamClass classify(const ModelSpec& spec) {
    ParamClass out;
    const std::size_t d = spec.d;
    auto add = [&](ParamLabel label, std::string why) {
        out.labels.push_back(label);
        out.details[label] = std::move(why);
    };

    if (spec.l == 1) {
        const Matrix& a = spec.A[0];
        const bool diagonal = is_diagonal_matrix(a);

        bool scalar = diagonal && std::abs(a(0, 0)) > kStructureTolerance;
        for (std::size_t i = 1; scalar && i < d; ++i)
            if (std::abs(a(i, i) - a(0, 0)) > kStructureTolerance) scalar = false;

        // A^T A = s I with s > 0  <=>  A = sqrt(s) O with O orthogonal.
        const Matrix gram = a.transpose() * a;
        const double s = gram(0, 0);
        bool similarity = s > kStructureTolerance;
        for (std::size_t i = 0; similarity && i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                const double target = i == j ? s : 0.0;
                if (std::abs(gram(i, j) - target) > kStructureTolerance) {
                    similarity = false;
                    break;
                }
            }

        if (scalar) {
            std::ostringstream os;
            os << "A_1 = " << a(0, 0) << " * I";
            add(ParamLabel::Scalar, os.str());
        }
        if (diagonal) add(ParamLabel::Diagonal, "l = 1 and A_1 is diagonal");
        if (similarity) {
            std::ostringstream os;
            os << "A_1^T A_1 = a^2 I with a = " << std::sqrt(s);
            add(ParamLabel::Similarity, os.str());
        }
    } else if (spec.l == d * d) {
        Matrix stacked(d * d, spec.l);
        for (std::size_t i = 0; i < spec.l; ++i) {
            const Vector v = vec(spec.A[i]);
            for (std::size_t r = 0; r < v.size(); ++r) stacked(r, i) = v[r];
        }
        const std::size_t r = rank(stacked);
        if (r == d * d)
            add(ParamLabel::IDCandidate,
                "l = d^2 and vec(A_i) are linearly independent; m -> sum m_i A_i is onto M(d,R)");
    }

    if (out.labels.empty()) {
        std::string why = "no structural class applies";
        if (spec.l > 1 && spec.l < d * d)
            why = "l < d^2: a density of products on M(d,R) may still hold for long products but is not "
                  "decidable structurally";
        add(ParamLabel::General, why);
    }
    if (spec.A0) out.details[out.labels.front()] += "; autoregressive term A0 present";
    return out;
}

CoefficientDraw assemble_coefficient(const ModelSpec& spec, const Matrix& chol_c, std::span<const double> m,
                                     std::span<const double> z) {
    if (m.size() != spec.l || z.size() != spec.d)
        throw Error(ErrorCode::DimensionMismatch, "captured normals do not match (l, d)");
    CoefficientDraw draw;
    draw.m.assign(m.begin(), m.end());
    draw.mtilde = spec.A0 ? *spec.A0 : Matrix(spec.d, spec.d);
    for (std::size_t i = 0; i < spec.l; ++i) draw.mtilde += m[i] * spec.A[i];
    draw.q = chol_c * z;
    return draw;
}

CoefficientDraw draw_coefficient(const ModelSpec& spec, Stream& stream) {
    Vector m(spec.l), z(spec.d);
    for (double& v : m) v = stream.normal();
    for (double& v : z) v = stream.normal();
    return assemble_coefficient(spec, cholesky(spec.C), m, z);
}

CoefficientSampler::CoefficientSampler(const ModelSpec& spec)
    : spec_(spec), chol_(cholesky(spec.C)), m_(spec.l), z_(spec.d) {}

void CoefficientSampler::draw_multiplier(Stream& stream, Matrix& mtilde) {
    for (double& v : m_) v = stream.normal();
    auto out = mtilde.data();
    if (spec_.A0) {
        const auto a0 = spec_.A0->data();
        std::copy(a0.begin(), a0.end(), out.begin());
    } else {
        std::fill(out.begin(), out.end(), 0.0);
    }
    for (std::size_t i = 0; i < spec_.l; ++i) {
        const auto a = spec_.A[i].data();
        const double mi = m_[i];
        for (std::size_t k = 0; k < out.size(); ++k) out[k] += mi * a[k];
    }
}

void CoefficientSampler::draw(Stream& stream, Matrix& mtilde, std::span<double> q) {
    draw_multiplier(stream, mtilde);
    for (double& v : z_) v = stream.normal();
    multiply_into(chol_, z_, q);
}

}  // namespace bekk
