#pragma once

// Two-qubit pure and mixed states in the computational basis
// {|00>, |01>, |10>, |11>}; mode 1 is the left label.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>

#include "kerrdeco/linalg.hpp"

namespace kerrdeco {

inline constexpr double kStateTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;

enum class Sign { plus, minus };

inline double sign_value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }

class PureState2Q {
 public:
  PureState2Q(complex c00, complex c01, complex c10, complex c11) : amps_{c00, c01, c10, c11} {
    const double norm = std::norm(c00) + std::norm(c01) + std::norm(c10) + std::norm(c11);
    if (std::abs(norm - 1.0) > kStateTolerance)
      throw std::invalid_argument("PureState2Q: amplitudes are not normalized (norm^2 = " +
                                  std::to_string(norm) + ")");
  }

  // Rescales arbitrary nonzero amplitudes to unit norm.
  static PureState2Q normalized(complex c00, complex c01, complex c10, complex c11) {
    const double n = std::sqrt(std::norm(c00) + std::norm(c01) + std::norm(c10) + std::norm(c11));
    if (n == 0.0) throw std::invalid_argument("PureState2Q: zero vector");
    return {c00 / n, c01 / n, c10 / n, c11 / n};
  }

  complex c00() const { return amps_[0]; }
  complex c01() const { return amps_[1]; }
  complex c10() const { return amps_[2]; }
  complex c11() const { return amps_[3]; }
  const std::array<complex, 4>& amplitudes() const { return amps_; }

 private:
  std::array<complex, 4> amps_;
};

// Hermitian, unit-trace, positive semidefinite 4x4 matrix.
class DensityMatrix2Q {
 public:
  explicit DensityMatrix2Q(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.dim() != 4) throw std::invalid_argument("DensityMatrix2Q: expected a 4x4 matrix");
    if (!is_hermitian(m_, kStateTolerance))
      throw std::invalid_argument("DensityMatrix2Q: matrix is not hermitian");
    const complex tr = m_.trace();
    if (std::abs(tr - 1.0) > kStateTolerance)
      throw std::invalid_argument("DensityMatrix2Q: trace is " + std::to_string(tr.real()) + ", not 1");
    const auto ev = hermitian_eigenvalues(m_);
    if (ev.front() < -kPsdTolerance)
      throw std::invalid_argument("DensityMatrix2Q: negative eigenvalue " + std::to_string(ev.front()));
  }

  const ComplexMatrix& matrix() const { return m_; }
  complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  double purity() const { return multiply(m_, m_).trace().real(); }

  friend bool operator==(const DensityMatrix2Q&, const DensityMatrix2Q&) = default;

 private:
  ComplexMatrix m_;
};

inline PureState2Q bell_psi(Sign sign) {
  const double r = 1.0 / std::sqrt(2.0);
  return {0.0, r, sign_value(sign) * r, 0.0};
}

inline PureState2Q bell_phi(Sign sign) {
  const double r = 1.0 / std::sqrt(2.0);
  return {r, 0.0, 0.0, sign_value(sign) * r};
}

// (|00> + |01> + |10> - |11>)/2
inline PureState2Q bell_like() { return {0.5, 0.5, 0.5, -0.5}; }

// (d1|0> + d2|1>) (x) (d3|0> + d4|1>)
inline PureState2Q separable(complex d1, complex d2, complex d3, complex d4) {
  if (std::abs(std::norm(d1) + std::norm(d2) - 1.0) > kStateTolerance ||
      std::abs(std::norm(d3) + std::norm(d4) - 1.0) > kStateTolerance)
    throw std::invalid_argument("separable: single-qubit factors must be normalized");
  return {d1 * d3, d1 * d4, d2 * d3, d2 * d4};
}

inline PureState2Q plus_plus() {
  const double r = 1.0 / std::sqrt(2.0);
  return separable(r, r, r, r);
}

inline ComplexMatrix outer_product(const PureState2Q& psi) {
  ComplexMatrix m(4);
  const auto& a = psi.amplitudes();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) m(i, j) = a[i] * std::conj(a[j]);
  return m;
}

inline DensityMatrix2Q to_density(const PureState2Q& psi) { return DensityMatrix2Q(outer_product(psi)); }

enum class WernerKind { psi, phi, like };

// p |MES><MES| + (1-p)/4 I. The sign is ignored for WernerKind::like.
inline DensityMatrix2Q werner(WernerKind kind, Sign sign, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("werner: p must lie in [0, 1]");
  const PureState2Q mes = kind == WernerKind::psi   ? bell_psi(sign)
                          : kind == WernerKind::phi ? bell_phi(sign)
                                                    : bell_like();
  ComplexMatrix m = outer_product(mes) * p;
  for (std::size_t i = 0; i < 4; ++i) m(i, i) += (1.0 - p) / 4.0;
  return DensityMatrix2Q(std::move(m));
}

inline DensityMatrix2Q maximally_mixed() { return DensityMatrix2Q(ComplexMatrix::identity(4) * 0.25); }

// Initial-state families.
namespace init {
struct BellPsi { Sign sign = Sign::plus; };
struct BellPhi { Sign sign = Sign::plus; };
struct BellLike {};
struct PlusPlus {};
struct Separable { std::array<complex, 4> d; };
struct WernerPsi { Sign sign = Sign::plus; double p = 1.0; };
struct WernerPhi { Sign sign = Sign::plus; double p = 1.0; };
struct WernerLike { double p = 1.0; };
struct CustomPure { PureState2Q psi; };
struct CustomMixed { DensityMatrix2Q rho; };
}  // namespace init

using InitialState = std::variant<init::BellPsi, init::BellPhi, init::BellLike, init::PlusPlus,
                                  init::Separable, init::WernerPsi, init::WernerPhi,
                                  init::WernerLike, init::CustomPure, init::CustomMixed>;

inline DensityMatrix2Q initial_density(const InitialState& s) {
  return std::visit(
      [](const auto& v) -> DensityMatrix2Q {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, init::BellPsi>) return to_density(bell_psi(v.sign));
        else if constexpr (std::is_same_v<T, init::BellPhi>) return to_density(bell_phi(v.sign));
        else if constexpr (std::is_same_v<T, init::BellLike>) return to_density(bell_like());
        else if constexpr (std::is_same_v<T, init::PlusPlus>) return to_density(plus_plus());
        else if constexpr (std::is_same_v<T, init::Separable>)
          return to_density(separable(v.d[0], v.d[1], v.d[2], v.d[3]));
        else if constexpr (std::is_same_v<T, init::WernerPsi>) return werner(WernerKind::psi, v.sign, v.p);
        else if constexpr (std::is_same_v<T, init::WernerPhi>) return werner(WernerKind::phi, v.sign, v.p);
        else if constexpr (std::is_same_v<T, init::WernerLike>)
          return werner(WernerKind::like, Sign::plus, v.p);
        else if constexpr (std::is_same_v<T, init::CustomPure>) return to_density(v.psi);
        else return v.rho;
      },
      s);
}

inline std::string family_name(const InitialState& s) {
  static constexpr const char* names[] = {"bell_psi",   "bell_phi",   "bell_like",   "plus_plus",
                                          "separable",  "werner_psi", "werner_phi",  "werner_like",
                                          "custom_pure", "custom_mixed"};
  return names[s.index()];
}

}  // namespace kerrdeco
