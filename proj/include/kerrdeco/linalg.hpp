#pragma once

// Small dense complex matrices and the two eigensolvers needed by the
// entanglement measures: cyclic complex Jacobi for hermitian input and a
// shifted Hessenberg QR for the (non-hermitian) spin-flip product.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kerrdeco {

using complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;

  explicit ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    if (dim == 0) throw std::invalid_argument("ComplexMatrix: dim must be positive");
  }

  ComplexMatrix(std::size_t dim, std::vector<complex> entries)
      : dim_(dim), entries_(std::move(entries)) {
    if (dim == 0) throw std::invalid_argument("ComplexMatrix: dim must be positive");
    if (entries_.size() != dim * dim)
      throw std::invalid_argument("ComplexMatrix: entries length must equal dim^2");
  }

  ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows)
      : ComplexMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != dim_) throw std::invalid_argument("ComplexMatrix: ragged rows");
      std::size_t j = 0;
      for (const auto& v : row) (*this)(i, j++) = v;
      ++i;
    }
  }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
  }

  std::size_t dim() const { return dim_; }
  std::span<const complex> entries() const { return entries_; }

  complex& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

  complex trace() const {
    complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix r(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
  }

  // Entrywise complex conjugate in the stored basis.
  ComplexMatrix conjugate() const {
    ComplexMatrix r = *this;
    for (auto& v : r.entries_) v = std::conj(v);
    return r;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : entries_) s += std::norm(v);
    return std::sqrt(s);
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_dim(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += o.entries_[k];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_dim(o);
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= o.entries_[k];
    return *this;
  }
  ComplexMatrix& operator*=(complex s) {
    for (auto& v : entries_) v *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, complex s) { return a *= s; }
  friend ComplexMatrix operator*(complex s, ComplexMatrix a) { return a *= s; }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void require_same_dim(const ComplexMatrix& o) const {
    if (o.dim_ != dim_) throw std::invalid_argument("ComplexMatrix: dimension mismatch");
  }

  std::size_t dim_ = 0;
  std::vector<complex> entries_;
};

inline ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("multiply: dimension mismatch");
  const std::size_t n = a.dim();
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const complex aik = a(i, k);
      if (aik == complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return multiply(a, b);
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix r(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) r(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return r;
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("max_abs_diff: dimension mismatch");
  double d = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    d = std::max(d, std::abs(a.entries()[k] - b.entries()[k]));
  return d;
}

inline bool is_hermitian(const ComplexMatrix& m, double tol) {
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j)
      if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
  return true;
}

// Pauli sigma_y.
inline ComplexMatrix pauli_y() {
  return ComplexMatrix{{0.0, complex(0, -1)}, {complex(0, 1), 0.0}};
}

// Transpose over the first qubit of a two-qubit operator:
// element (2i+k, 2j+l) moves to (2j+k, 2i+l).
inline ComplexMatrix partial_transpose_first(const ComplexMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("partial_transpose_first: expected a 4x4 matrix");
  ComplexMatrix r(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) r(2 * j + k, 2 * i + l) = rho(2 * i + k, 2 * j + l);
  return r;
}

inline ComplexMatrix partial_transpose_second(const ComplexMatrix& rho) {
  if (rho.dim() != 4) throw std::invalid_argument("partial_transpose_second: expected a 4x4 matrix");
  ComplexMatrix r(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) r(2 * i + l, 2 * j + k) = rho(2 * i + k, 2 * j + l);
  return r;
}

struct HermitianEigensystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k belongs to values[k]
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace detail

// Cyclic complex Jacobi. Each (p, q) rotation is a phase change on q that
// makes a_pq real followed by a real Givens rotation.
inline HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& h,
                                                  double hermitian_tol = 1e-12) {
  if (!is_hermitian(h, hermitian_tol))
    throw std::invalid_argument("hermitian_eigensystem: input is not hermitian");
  constexpr double kOffTolerance = 1e-13;
  constexpr int kMaxSweeps = 100;

  const std::size_t n = h.dim();
  ComplexMatrix a = h;
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, h.frobenius_norm());

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (detail::off_diagonal_norm(a) < kOffTolerance * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double mag = std::abs(a(p, q));
        if (mag == 0.0) continue;
        const complex phase = a(p, q) / mag;        // e^{i phi}
        const complex phase_conj = std::conj(phase);
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        // A <- A U with U_pp = c, U_pq = s, U_qp = -s e^{-i phi}, U_qq = c e^{-i phi}.
        for (std::size_t k = 0; k < n; ++k) {
          const complex akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * phase_conj * akq;
          a(k, q) = s * akp + c * phase_conj * akq;
          const complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * phase_conj * vkq;
          v(k, q) = s * vkp + c * phase_conj * vkq;
        }
        // A <- U^H A.
        for (std::size_t k = 0; k < n; ++k) {
          const complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * phase * aqk;
          a(q, k) = s * apk + c * phase * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  HermitianEigensystem out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
  return hermitian_eigensystem(h).values;
}

// Eigenvalues of a general complex matrix: Givens reduction to Hessenberg
// form, then single-shift QR with Wilkinson shifts and deflation.
inline std::vector<complex> eigenvalues(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  ComplexMatrix h = m;
  constexpr double eps = std::numeric_limits<double>::epsilon();

  // Rotation G acting on rows/cols (i, k): [c s; -conj(s) c] with real c.
  auto make_rotation = [](complex x, complex y, double& c, complex& s) {
    const double ax = std::abs(x), ay = std::abs(y);
    if (ay == 0.0) {
      c = 1.0;
      s = 0.0;
      return;
    }
    const double r = std::hypot(ax, ay);
    if (ax == 0.0) {
      c = 0.0;
      s = std::conj(y) / ay;
      return;
    }
    c = ax / r;
    s = (x / ax) * std::conj(y) / r;
  };
  auto apply_left = [&](std::size_t i, std::size_t k, double c, complex s, std::size_t from) {
    for (std::size_t j = from; j < n; ++j) {
      const complex hi = h(i, j), hk = h(k, j);
      h(i, j) = c * hi + s * hk;
      h(k, j) = -std::conj(s) * hi + c * hk;
    }
  };
  auto apply_right = [&](std::size_t i, std::size_t k, double c, complex s, std::size_t to) {
    for (std::size_t r = 0; r < to; ++r) {
      const complex hi = h(r, i), hk = h(r, k);
      h(r, i) = c * hi + std::conj(s) * hk;
      h(r, k) = -s * hi + c * hk;
    }
  };

  for (std::size_t col = 0; col + 2 < n; ++col) {
    for (std::size_t row = n - 1; row > col + 1; --row) {
      double c;
      complex s;
      make_rotation(h(row - 1, col), h(row, col), c, s);
      apply_left(row - 1, row, c, s, 0);
      apply_right(row - 1, row, c, s, n);
      h(row, col) = 0.0;
    }
  }

  const double norm = std::max(h.frobenius_norm(), std::numeric_limits<double>::min());
  std::vector<complex> out(n);
  std::size_t hi = n - 1;
  int iterations = 0;
  while (true) {
    if (hi == 0) {
      out[0] = h(0, 0);
      break;
    }
    std::size_t lo = hi;
    while (lo > 0) {
      const double sub = std::abs(h(lo, lo - 1));
      const double diag = std::abs(h(lo, lo)) + std::abs(h(lo - 1, lo - 1));
      if (sub <= eps * diag || sub <= eps * norm) {
        h(lo, lo - 1) = 0.0;
        break;
      }
      --lo;
    }
    if (lo == hi) {
      out[hi] = h(hi, hi);
      --hi;
      iterations = 0;
      continue;
    }
    if (++iterations > 200) throw std::runtime_error("eigenvalues: QR iteration did not converge");

    complex shift;
    if (iterations % 11 == 10) {
      shift = h(hi, hi) + std::abs(h(hi, hi - 1));
    } else {
      const complex a = h(hi - 1, hi - 1), b = h(hi - 1, hi), c = h(hi, hi - 1), d = h(hi, hi);
      const complex tr_half = 0.5 * (a + d);
      const complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
      const complex l1 = tr_half + disc, l2 = tr_half - disc;
      shift = std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
    }

    for (std::size_t k = lo; k <= hi; ++k) h(k, k) -= shift;
    std::vector<std::pair<double, complex>> rotations;
    rotations.reserve(hi - lo);
    for (std::size_t k = lo; k < hi; ++k) {
      double c;
      complex s;
      make_rotation(h(k, k), h(k + 1, k), c, s);
      for (std::size_t j = k; j < n; ++j) {
        const complex x = h(k, j), y = h(k + 1, j);
        h(k, j) = c * x + s * y;
        h(k + 1, j) = -std::conj(s) * x + c * y;
      }
      h(k + 1, k) = 0.0;
      rotations.emplace_back(c, s);
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const auto [c, s] = rotations[k - lo];
      for (std::size_t r = 0; r <= std::min(k + 2, hi); ++r) {
        const complex x = h(r, k), y = h(r, k + 1);
        h(r, k) = c * x + std::conj(s) * y;
        h(r, k + 1) = -s * x + c * y;
      }
    }
    for (std::size_t k = lo; k <= hi; ++k) h(k, k) += shift;
  }
  return out;
}

// Spectrum of rho * rho_tilde. The product is similar to a PSD matrix, so
// small imaginary parts and small negative reals are roundoff.
inline std::vector<double> nonneg_spectrum_of_product(const ComplexMatrix& m) {
  constexpr double kNoise = 1e-9;
  if (m.dim() != 4) throw std::invalid_argument("nonneg_spectrum_of_product: expected a 4x4 matrix");
  std::vector<double> out;
  out.reserve(4);
  for (const complex& ev : eigenvalues(m)) {
    if (std::abs(ev.imag()) > kNoise)
      throw std::domain_error("nonneg_spectrum_of_product: eigenvalue with imaginary part " +
                              std::to_string(ev.imag()) + " (non-physical input)");
    if (ev.real() < -kNoise)
      throw std::domain_error("nonneg_spectrum_of_product: negative eigenvalue " +
                              std::to_string(ev.real()) + " (non-physical input)");
    out.push_back(std::max(0.0, ev.real()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
  double s = 0.0;
  for (double ev : hermitian_eigenvalues(a - b)) s += std::abs(ev);
  return 0.5 * s;
}

}  // namespace kerrdeco
