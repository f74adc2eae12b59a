#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace nrq {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

inline constexpr double kDefaultTol = 1e-10;

/// Dense row-major complex matrix. Sized for the 4x4 two-qubit operators and
/// the 16x16 superoperators built from them; no attempt is made to scale.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::initializer_list<Complex> entries);

  static CMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const Complex> diag);
  static CMatrix diagonal(std::initializer_list<Complex> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  bool all_finite() const noexcept;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex scale);

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(Complex scale, CMatrix a);
CMatrix operator*(CMatrix a, Complex scale);
CVector operator*(const CMatrix& a, std::span<const Complex> v);

CMatrix kron(const CMatrix& a, const CMatrix& b);
CMatrix dagger(const CMatrix& a);
CMatrix transpose(const CMatrix& a);
CMatrix conjugate(const CMatrix& a);
Complex trace(const CMatrix& a);

double frobenius_norm(const CMatrix& a);
/// Maximum absolute row sum.
double inf_norm(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
/// Largest entry of |a - a^dagger|.
double hermiticity_defect(const CMatrix& a);

double norm(std::span<const Complex> v);

/// Eigen-decomposition of a Hermitian matrix: ascending real spectrum and
/// orthonormal eigenvectors stored as the columns of `vectors`.
struct EigenSystem {
  std::vector<double> values;
  CMatrix vectors;
};

/// Cyclic complex Jacobi. Converges once the off-diagonal Frobenius norm
/// drops below 1e-13 * ||a||_F.
EigenSystem hermitian_eigensystem(const CMatrix& a, double tol = kDefaultTol);

/// Hermitian PSD square root; eigenvalues in [-tol, 0) are clamped to zero.
CMatrix psd_sqrt(const CMatrix& a, double tol = kDefaultTol);

/// Scaling and squaring around a truncated Taylor series.
CMatrix matrix_exponential(const CMatrix& a, double tol = kDefaultTol);

/// Right singular vectors of `a` (columns of `vectors`, ordered by ascending
/// singular value) taken from the eigensystem of a^dagger a. Each singular
/// value is re-measured as ||a v_k|| so tiny values keep full absolute accuracy.
struct SingularSystem {
  std::vector<double> values;
  CMatrix vectors;
};

SingularSystem right_singular_system(const CMatrix& a, double tol = kDefaultTol);

struct NullVector {
  CVector vector;
  double residual = 0.0;  // ||a v||
  double gap = 0.0;       // second-smallest singular value
};

/// Unit vector minimising ||a v||. Whether the null space is degenerate is
/// left to the caller, who compares `gap` against its own threshold.
NullVector null_vector(const CMatrix& a, double gap_tol = kDefaultTol);

}  // namespace nrq
