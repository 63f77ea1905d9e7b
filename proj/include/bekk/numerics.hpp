#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace bekk {

using Vector = std::vector<double>;

/// Dense row-major real matrix. Sizes in this library are small (d <= 32),
/// except for Kronecker powers used by the moment condition.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> diag);
    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    [[nodiscard]] std::span<double> data() noexcept { return data_; }
    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

    [[nodiscard]] Matrix transpose() const;
    [[nodiscard]] bool all_finite() const noexcept;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator*=(double s) noexcept;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, Matrix m);
Vector operator*(const Matrix& m, std::span<const double> v);

/// y = m * x without allocation; y must not alias x.
void multiply_into(const Matrix& m, std::span<const double> x, std::span<double> y) noexcept;

[[nodiscard]] double max_abs_diff(const Matrix& a, const Matrix& b);
[[nodiscard]] double euclidean_norm(std::span<const double> v) noexcept;
[[nodiscard]] double max_norm(std::span<const double> v) noexcept;

inline constexpr double kSymmetryTolerance = 1e-10;

/// Lower-triangular L with L L^T = m. The input is symmetrized before
/// factorization; asymmetry beyond kSymmetryTolerance or a non-positive pivot
/// throws Error{NotPositiveDefinite} naming the pivot.
[[nodiscard]] Matrix cholesky(const Matrix& m);

/// Largest eigenvalue modulus. Analytic for 2x2; Eigen's real Schur solver up
/// to 512; beyond that, averaged log-growth of an iterated vector.
[[nodiscard]] double spectral_radius(const Matrix& m);

[[nodiscard]] Matrix kron(const Matrix& a, const Matrix& b);

/// a ⊗ a ⊗ ... ⊗ a (p factors), p >= 1.
[[nodiscard]] Matrix kron_power(const Matrix& a, unsigned p);

/// Column-stacked vec(m).
[[nodiscard]] Vector vec(const Matrix& m);

/// Numerical rank via Gaussian elimination with partial pivoting.
[[nodiscard]] std::size_t rank(Matrix m, double tol = 1e-10);

}  // namespace bekk
