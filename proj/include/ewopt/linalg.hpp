#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ewopt {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Throws DimensionMismatch unless data.size() == rows * cols.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> data);

  static ComplexMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static ComplexMatrix identity(std::size_t n);
  /// Matrix unit |i><j| of size n x n, 0-based indices.
  static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j);
  static ComplexMatrix diagonal(std::span<const Complex> diag);
  /// |v><v|
  static ComplexMatrix outer(std::span<const Complex> v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> data() const { return data_; }
  std::span<Complex> data() { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  double frobenius_norm() const;
  double max_abs() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexVector operator*(const ComplexMatrix& a, std::span<const Complex> v);

/// Largest entrywise modulus of a - b. Throws DimensionMismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Vector helpers.
Complex inner(std::span<const Complex> a, std::span<const Complex> b);  // <a|b>
double norm(std::span<const Complex> v);
ComplexVector normalized(std::span<const Complex> v);
ComplexVector kron(std::span<const Complex> a, std::span<const Complex> b);

/// Eigenpairs of a Hermitian matrix: ascending eigenvalues, eigenvectors as
/// the matching columns of a unitary matrix.
struct HermitianEigenResult {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexVector eigenvector(std::size_t k) const;
};

/// Cyclic complex Jacobi. `tol` bounds the relative anti-Hermitian part
/// ||M - M^dag||_F <= tol * ||M||_F accepted before symmetrizing.
/// Throws NonHermitianInput, NoConvergence (after 100 sweeps), DimensionMismatch.
HermitianEigenResult hermitian_eig(const ComplexMatrix& m, double tol = 1e-12);

double min_eigenvalue(const ComplexMatrix& m);
double max_eigenvalue(const ComplexMatrix& m);

/// Spectral norm. Hermitian input uses max |lambda|; otherwise sqrt(lambda_max(M^dag M)).
double operator_norm(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Subsystem { A, B };

/// Transposes one tensor factor of a (dimA*dimB)-square matrix.
ComplexMatrix partial_transpose(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                                Subsystem which = Subsystem::B);

/// Partial trace over one factor; returns the operator on the other factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b,
                            Subsystem traced_out);

/// Number of eigenvalues of the Gram matrix above tol * (largest eigenvalue).
/// Uses the frame operator sum |v><v| when there are more vectors than
/// coordinates; its nonzero spectrum equals the Gram matrix's.
/// Throws EmptyInput, DimensionMismatch.
std::size_t numerical_rank(std::span<const ComplexVector> vectors, double tol);

}  // namespace ewopt
