#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace tvgap::linalg {

using Vector = std::vector<double>;

/// Numerical thresholds shared by every routine in this namespace.
struct Tolerances {
    double symmetry_rel = 1e-12;   ///< |a_ij - a_ji| <= symmetry_rel * max|a|
    double rank_rel = 1e-10;       ///< residual below rank_rel * |v| is dependent
    double zero_abs = 1e-14;       ///< vectors shorter than this count as zero
    double jacobi_offdiag_rel = 1e-15;
    int jacobi_max_sweeps = 100;
};

const Tolerances& default_tolerances();

/// Dense row-major matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> diag);
    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static Matrix from_rows(const std::vector<Vector>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> data() const noexcept { return data_; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    Vector column(std::size_t j) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix transpose(const Matrix& a);
Matrix multiply(const Matrix& a, const Matrix& b);
Vector multiply(const Matrix& a, std::span<const double> x);
Matrix subtract(const Matrix& a, const Matrix& b);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);
Vector subtract(std::span<const double> a, std::span<const double> b);
Vector scaled(std::span<const double> a, double s);

/// x^T A x
double quadratic_form(const Matrix& a, std::span<const double> x);

/// Exact bit-pattern equality of shape and every entry.
bool bitwise_equal(const Matrix& a, const Matrix& b);

bool is_symmetric(const Matrix& a, double rel_tol);

/// Cholesky factor L (lower triangular) with L L^T = m. Reads the lower
/// triangle only. Throws NotPositiveDefinite naming the failing pivot.
Matrix cholesky(const Matrix& m);

/// Solves L y = b for lower-triangular L.
Vector forward_substitute(const Matrix& lower, std::span<const double> b);

struct SymEig {
    Vector values;   // descending
    Matrix vectors;  // column k pairs with values[k]
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
SymEig sym_eig(const Matrix& m, const Tolerances& tol = default_tolerances());

/// Symmetric positive definite matrix; validated on construction and
/// carries its Cholesky factor.
class SpdMatrix {
public:
    explicit SpdMatrix(Matrix m, const Tolerances& tol = default_tolerances());

    std::size_t dim() const noexcept { return m_.rows(); }
    const Matrix& matrix() const noexcept { return m_; }
    const Matrix& cholesky_factor() const noexcept { return l_; }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

private:
    Matrix m_;
    Matrix l_;
};

/// Symmetric inverse square root R with R m R = I.
SpdMatrix inv_sqrt(const SpdMatrix& m, const Tolerances& tol = default_tolerances());

/// Modified Gram-Schmidt (two passes) over the inputs in order. Dependent or
/// near-zero inputs are skipped, so the output size is the numerical rank.
std::vector<Vector> orthonormal_basis(std::span<const Vector> vs,
                                      const Tolerances& tol = default_tolerances());

}  // namespace tvgap::linalg
