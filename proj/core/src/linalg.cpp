#include "nrq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "nrq/error.hpp"

namespace nrq {

namespace {

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::ShapeMismatch, std::string(op) + ": operand shapes differ");
  }
}

void require_square(const CMatrix& a, const char* op) {
  if (!a.is_square()) {
    throw Error(ErrorKind::ShapeMismatch, std::string(op) + ": matrix is not square");
  }
}

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiOffDiagonal = 1e-13;
constexpr int kMaxTaylorTerms = 60;

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::initializer_list<Complex> entries)
    : rows_(rows), cols_(cols), data_(entries) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorKind::ShapeMismatch, "entry count does not match rows * cols");
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const Complex> diag) {
  CMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

CMatrix CMatrix::diagonal(std::initializer_list<Complex> diag) {
  return diagonal(std::span<const Complex>(diag.begin(), diag.size()));
}

bool CMatrix::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](const Complex& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  require_same_shape(*this, other, "operator+=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  require_same_shape(*this, other, "operator-=");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

CMatrix& CMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(Complex scale, CMatrix a) { return a *= scale; }
CMatrix operator*(CMatrix a, Complex scale) { return a *= scale; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::ShapeMismatch, "matrix product: inner dimensions differ");
  }
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

CVector operator*(const CMatrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) {
    throw Error(ErrorKind::ShapeMismatch, "matrix-vector product: dimensions differ");
  }
  CVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
    out[i] = acc;
  }
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
  return k;
}

CMatrix dagger(const CMatrix& a) {
  CMatrix d(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) d(j, i) = std::conj(a(i, j));
  return d;
}

CMatrix transpose(const CMatrix& a) {
  CMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

CMatrix conjugate(const CMatrix& a) {
  CMatrix c = a;
  for (auto& z : c.data()) z = std::conj(z);
  return c;
}

Complex trace(const CMatrix& a) {
  require_square(a, "trace");
  Complex t{};
  for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
  return t;
}

double frobenius_norm(const CMatrix& a) {
  double s = 0.0;
  for (const auto& z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

double inf_norm(const CMatrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) row += std::abs(a(i, j));
    best = std::max(best, row);
  }
  return best;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double best = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) {
    best = std::max(best, std::abs(a.data()[i] - b.data()[i]));
  }
  return best;
}

double hermiticity_defect(const CMatrix& a) {
  require_square(a, "hermiticity_defect");
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      best = std::max(best, std::abs(a(i, j) - std::conj(a(j, i))));
  return best;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

EigenSystem hermitian_eigensystem(const CMatrix& a, double tol) {
  require_square(a, "hermitian_eigensystem");
  if (!a.all_finite()) throw Error(ErrorKind::NoConvergence, "non-finite matrix entries");
  if (hermiticity_defect(a) > tol) {
    throw Error(ErrorKind::NotHermitian, "hermitian_eigensystem: |a - a^dagger| exceeds tolerance");
  }

  const std::size_t n = a.rows();
  CMatrix m = a;
  for (std::size_t i = 0; i < n; ++i) m(i, i) = m(i, i).real();
  CMatrix v = CMatrix::identity(n);

  const double scale = frobenius_norm(a);
  const double threshold = kJacobiOffDiagonal * scale;

  auto off_diagonal = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
  };

  bool converged = scale == 0.0;
  for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
    if (off_diagonal() < threshold) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = m(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;

        // Remove the phase of a_pq, then zero it with a real rotation.
        const double theta = (m(q, q).real() - m(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;

        const Complex upp = c;
        const Complex upq = s;
        const Complex uqp = -s * std::conj(phase);
        const Complex uqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const Complex mkp = m(k, p);
          const Complex mkq = m(k, q);
          m(k, p) = mkp * upp + mkq * uqp;
          m(k, q) = mkp * upq + mkq * uqq;
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex mpk = m(p, k);
          const Complex mqk = m(q, k);
          m(p, k) = std::conj(upp) * mpk + std::conj(uqp) * mqk;
          m(q, k) = std::conj(upq) * mpk + std::conj(uqq) * mqk;
        }
        m(p, q) = 0.0;
        m(q, p) = 0.0;
        m(p, p) = m(p, p).real();
        m(q, q) = m(q, q).real();
      }
    }
  }
  if (!converged && off_diagonal() >= threshold) {
    throw Error(ErrorKind::NoConvergence, "Jacobi sweep budget exhausted");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return m(i, i).real() < m(j, j).real(); });

  EigenSystem out{std::vector<double>(n), CMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = m(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

CMatrix psd_sqrt(const CMatrix& a, double tol) {
  const EigenSystem es = hermitian_eigensystem(a, tol);
  const std::size_t n = a.rows();
  CMatrix b(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    double lambda = es.values[k];
    if (lambda < -tol) {
      throw Error(ErrorKind::NotPSD, "psd_sqrt: eigenvalue " + std::to_string(lambda) + " below -tol");
    }
    const double root = std::sqrt(std::max(lambda, 0.0));
    if (root == 0.0) continue;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vi = es.vectors(i, k) * root;
      for (std::size_t j = 0; j < n; ++j) b(i, j) += vi * std::conj(es.vectors(j, k));
    }
  }
  return b;
}

CMatrix matrix_exponential(const CMatrix& a, double tol) {
  require_square(a, "matrix_exponential");
  const double anorm = inf_norm(a);
  if (!std::isfinite(anorm)) throw Error(ErrorKind::NoConvergence, "non-finite matrix entries");

  const std::size_t n = a.rows();
  int squarings = 0;
  if (anorm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(anorm / 0.5)));
  const CMatrix scaled = a * Complex{std::ldexp(1.0, -squarings), 0.0};

  const double stop = std::max(tol * 1e-6, std::numeric_limits<double>::epsilon());
  CMatrix sum = CMatrix::identity(n);
  CMatrix term = CMatrix::identity(n);
  bool converged = false;
  for (int k = 1; k <= kMaxTaylorTerms; ++k) {
    term = term * scaled;
    term *= Complex{1.0 / k, 0.0};
    sum += term;
    if (inf_norm(term) <= stop * inf_norm(sum)) {
      converged = true;
      break;
    }
  }
  if (!converged) throw Error(ErrorKind::NoConvergence, "Taylor series did not converge");

  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

SingularSystem right_singular_system(const CMatrix& a, double tol) {
  const CMatrix gram = dagger(a) * a;
  // The Gram matrix is Hermitian only up to round-off proportional to its size.
  const double herm_tol = std::max(tol, 1e-12 * std::max(1.0, frobenius_norm(gram)));
  EigenSystem es = hermitian_eigensystem(gram, herm_tol);

  const std::size_t n = a.cols();
  SingularSystem out{std::vector<double>(n), std::move(es.vectors)};
  CVector column(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t r = 0; r < n; ++r) column[r] = out.vectors(r, k);
    out.values[k] = norm(a * std::span<const Complex>(column));
  }
  return out;
}

NullVector null_vector(const CMatrix& a, double gap_tol) {
  require_square(a, "null_vector");
  const SingularSystem svd = right_singular_system(a);
  const std::size_t n = a.rows();

  NullVector out;
  out.vector.resize(n);
  for (std::size_t r = 0; r < n; ++r) out.vector[r] = svd.vectors(r, 0);
  out.residual = svd.values[0];
  out.gap = n > 1 ? svd.values[1] : 0.0;
  if (!std::isfinite(out.residual) || !std::isfinite(out.gap) || gap_tol < 0.0) {
    throw Error(ErrorKind::NoConvergence, "null_vector: non-finite singular values");
  }
  return out;
}

}  // namespace nrq
