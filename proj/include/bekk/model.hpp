#pragma once

#include "bekk/numerics.hpp"
#include "bekk/random.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bekk {

/// BEKK-ARCH(1) model with l terms:
///   H_t = C + sum_i A_i X_{t-1} X_{t-1}^T A_i^T,   X_t = H_t^{1/2} Z_t,
/// equivalently the random-coefficient recursion X_t = M_t X_{t-1} + Q_t with
/// M_t = A0 + sum_i m_{it} A_i, m_{it} iid N(0,1), Q_t ~ N(0, C).
struct ModelSpec {
    std::size_t d = 0;
    std::size_t l = 0;
    std::vector<Matrix> A;
    Matrix C;
    std::optional<Matrix> A0;

    friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

/// Checks shapes, finiteness and positive definiteness of C. Returns the spec
/// unchanged. Throws NoTerms, DimensionMismatch or NotPositiveDefinite.
ModelSpec validate_spec(const ModelSpec& raw);

/// Convenience constructor for the l = 1 case; validates.
ModelSpec make_single_term(const Matrix& a, const Matrix& c);

enum class ParamLabel { Scalar, Diagonal, Similarity, IDCandidate, General };

[[nodiscard]] const char* to_string(ParamLabel label) noexcept;

struct ParamClass {
    std::vector<ParamLabel> labels;
    std::map<ParamLabel, std::string> details;

    [[nodiscard]] bool has(ParamLabel label) const;
};

inline constexpr double kStructureTolerance = 1e-10;

/// Structural classification of the coefficient matrices. IDCandidate is a
/// necessary condition only: l = d^2 with linearly independent vec(A_i).
[[nodiscard]] ParamClass classify(const ModelSpec& spec);

/// True iff l = 1, A0 absent and A_1 is diagonal.
[[nodiscard]] bool is_diagonal(const ModelSpec& spec);

struct CoefficientDraw {
    Vector m;       // l standard normals
    Matrix mtilde;  // A0 + sum_i m_i A_i
    Vector q;       // L z, L the Cholesky factor of C
};

/// Deterministic assembly of a draw from captured normals `m` (size l) and `z`
/// (size d). `chol_c` is the Cholesky factor of spec.C.
[[nodiscard]] CoefficientDraw assemble_coefficient(const ModelSpec& spec, const Matrix& chol_c,
                                                   std::span<const double> m, std::span<const double> z);

/// Draws m (l normals) then z (d normals) from `stream`.
[[nodiscard]] CoefficientDraw draw_coefficient(const ModelSpec& spec, Stream& stream);

/// Allocation-free repeated coefficient sampling for simulation loops. Uses the
/// same draw order as draw_coefficient, so both produce identical sequences.
class CoefficientSampler {
public:
    explicit CoefficientSampler(const ModelSpec& spec);

    /// Fills mtilde (d x d) and q (size d).
    void draw(Stream& stream, Matrix& mtilde, std::span<double> q);

    /// Fills only mtilde; consumes l normals.
    void draw_multiplier(Stream& stream, Matrix& mtilde);

    [[nodiscard]] const Matrix& chol_c() const noexcept { return chol_; }
    [[nodiscard]] const ModelSpec& spec() const noexcept { return spec_; }

private:
    ModelSpec spec_;
    Matrix chol_;
    Vector m_;
    Vector z_;
};

}  // namespace bekk
