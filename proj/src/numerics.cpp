#include "bekk/numerics.hpp"

#include "bekk/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

namespace bekk {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Io: return "io";
        case ErrorCode::Parse: return "parse";
        case ErrorCode::DimensionMismatch: return "dimension_mismatch";
        case ErrorCode::NotPositiveDefinite: return "not_positive_definite";
        case ErrorCode::NoTerms: return "no_terms";
        case ErrorCode::Domain: return "domain";
        case ErrorCode::Inapplicable: return "inapplicable";
        case ErrorCode::SizeLimit: return "size_limit";
        case ErrorCode::Degenerate: return "degenerate";
        case ErrorCode::Numerical: return "numerical";
    }
    return "unknown";
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
        std::size_t j = 0;
        for (double v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool Matrix::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

Matrix& Matrix::operator+=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw Error(ErrorCode::DimensionMismatch, "matrix addition with mismatched shapes");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(double s) noexcept {
    for (double& v : data_) v *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product with mismatched shapes");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

Matrix operator+(Matrix a, const Matrix& b) {
    a += b;
    return a;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    return a + (-1.0) * b;
}

Matrix operator*(double s, Matrix m) {
    m *= s;
    return m;
}

Vector operator*(const Matrix& m, std::span<const double> v) {
    if (m.cols() != v.size()) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product with mismatched shapes");
    Vector out(m.rows());
    multiply_into(m, v, out);
    return out;
}

void multiply_into(const Matrix& m, std::span<const double> x, std::span<double> y) noexcept {
    const std::size_t cols = m.cols();
    const auto data = m.data();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double acc = 0.0;
        const double* row = data.data() + i * cols;
        for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
        y[i] = acc;
    }
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw Error(ErrorCode::DimensionMismatch, "comparison of matrices with mismatched shapes");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    return worst;
}

double euclidean_norm(std::span<const double> v) noexcept {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double max_norm(std::span<const double> v) noexcept {
    double s = 0.0;
    for (double x : v) s = std::max(s, std::abs(x));
    return s;
}

Matrix cholesky(const Matrix& m) {
    if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "cholesky requires a square matrix");
    if (!m.all_finite()) throw Error(ErrorCode::NotPositiveDefinite, "cholesky input has non-finite entries");
    const std::size_t n = m.rows();
    Matrix sym(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (std::abs(m(i, j) - m(j, i)) > kSymmetryTolerance) {
                std::ostringstream os;
                os << "cholesky input not symmetric at (" << i << "," << j << ")";
                throw Error(ErrorCode::NotPositiveDefinite, os.str());
            }
            sym(i, j) = 0.5 * (m(i, j) + m(j, i));
        }

    Matrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double pivot = sym(j, j);
        for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
        if (!(pivot > 0.0)) {
            std::ostringstream os;
            os << "cholesky failed: non-positive pivot " << pivot << " at index " << j;
            throw Error(ErrorCode::NotPositiveDefinite, os.str());
        }
        const double ljj = std::sqrt(pivot);
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = sym(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / ljj;
        }
    }
    return l;
}

namespace {

double spectral_radius_2x2(const Matrix& m) {
    const double a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    const double half_tr = 0.5 * (a + d);
    const double det = a * d - b * c;
    const double disc = half_tr * half_tr - det;
    if (disc >= 0.0) {
        const double root = std::sqrt(disc);
        return std::max(std::abs(half_tr + root), std::abs(half_tr - root));
    }
    // Complex pair: |lambda|^2 = det.
    return std::sqrt(det);
}

double spectral_radius_iterated(const Matrix& m) {
    const std::size_t n = m.rows();
    Vector v(n), w(n);
    // Deterministic generic start; irrational-ish entries avoid special alignment.
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + std::sin(1.0 + 0.618033988749895 * static_cast<double>(i));
    double norm = euclidean_norm(v);
    for (double& x : v) x /= norm;

    constexpr int kWarmup = 500;
    constexpr int kWindow = 10000;
    double log_sum = 0.0;
    for (int it = 0; it < kWarmup + kWindow; ++it) {
        multiply_into(m, v, w);
        norm = euclidean_norm(w);
        if (norm == 0.0) return 0.0;
        if (it >= kWarmup) log_sum += std::log(norm);
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
    }
    return std::exp(log_sum / kWindow);
}

}  // namespace

double spectral_radius(const Matrix& m) {
    if (!m.square()) throw Error(ErrorCode::DimensionMismatch, "spectral radius requires a square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 0.0;
    if (n == 1) return std::abs(m(0, 0));
    if (n == 2) return spectral_radius_2x2(m);
    if (n > 512) return spectral_radius_iterated(m);

    Eigen::MatrixXd e(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(e, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw Error(ErrorCode::Numerical, "eigenvalue computation did not converge");
    double rho = 0.0;
    for (const auto& lambda : solver.eigenvalues()) rho = std::max(rho, std::abs(lambda));
    return rho;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const double aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

Matrix kron_power(const Matrix& a, unsigned p) {
    if (p == 0) throw Error(ErrorCode::Domain, "kron_power requires p >= 1");
    Matrix out = a;
    for (unsigned i = 1; i < p; ++i) out = kron(out, a);
    return out;
}

Vector vec(const Matrix& m) {
    Vector v;
    v.reserve(m.rows() * m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
        for (std::size_t i = 0; i < m.rows(); ++i) v.push_back(m(i, j));
    return v;
}

std::size_t rank(Matrix m, double tol) {
    const std::size_t rows = m.rows(), cols = m.cols();
    double scale = 0.0;
    for (double v : m.data()) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) return 0;
    const double threshold = tol * scale;

    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t best = r;
        for (std::size_t i = r + 1; i < rows; ++i)
            if (std::abs(m(i, c)) > std::abs(m(best, c))) best = i;
        if (std::abs(m(best, c)) <= threshold) continue;
        for (std::size_t j = 0; j < cols; ++j) std::swap(m(r, j), m(best, j));
        for (std::size_t i = r + 1; i < rows; ++i) {
            const double f = m(i, c) / m(r, c);
            for (std::size_t j = c; j < cols; ++j) m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

}  // namespace bekk
