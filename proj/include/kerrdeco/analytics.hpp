#pragma once

// Closed-form entanglement decay curves, envelope approximations for the
// strong-coupling regime (chi12 >> gamma), ordering checks, and the EIT
// estimate of the cross-coupling constant.
//
// Throughout, g = exp(-gamma t).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "kerrdeco/evolution.hpp"
#include "kerrdeco/measures.hpp"
#include "kerrdeco/states.hpp"

namespace kerrdeco {

struct MeasurePair {
  double concurrence = 0.0;
  double negativity = 0.0;
};

struct CurvePoint {
  double t = 0.0;
  double value = 0.0;
};

// Decay factor g = exp(-gamma t), used by the envelope functions.
struct Decay {
  double g;
  static Decay at(double gamma, double t) { return {std::exp(-gamma * t)}; }
};

// ---------------------------------------------------------------------------
// Lossless and exact curves

// gamma = 0: 2|e^{-2i chi12 t} c00 c11 - c01 c10|. The phase sign follows
// exp(-iHt); for real amplitudes either sign gives the same value.
inline double unitary_pure_entanglement(const PureState2Q& psi0, double chi12, double t) {
  const complex phase = std::exp(complex(0.0, -2.0 * chi12 * t));
  return 2.0 * std::abs(phase * psi0.c00() * psi0.c11() - psi0.c01() * psi0.c10());
}

inline MeasurePair bell_psi_curves(double gamma, double t) {
  const double g = std::exp(-gamma * t);
  return {g, std::sqrt(2.0 * g * g - 2.0 * g + 1.0) + g - 1.0};
}

inline MeasurePair bell_phi_curves(double gamma, double t) {
  const double g = std::exp(-gamma * t);
  return {g * g, g * g};
}

// Bell-like initial state without cross-coupling.
inline MeasurePair bell_like_uncoupled_curves(double gamma, double t) {
  const double g = std::exp(-gamma * t);
  const double x = g * (1.0 - g) / 2.0;
  return {g * (1.0 + g) / 2.0, std::sqrt(x * x - 4.0 * x + 1.0) + g - 1.0};
}

inline MeasurePair werner_psi_curves(double gamma, double p, double t) {
  const double g = std::exp(-gamma * t);
  const double q = 1.0 - p;
  const double c = g * p - g * std::sqrt((1.0 - g) * q + g * g * q * q / 4.0);
  const double n = std::sqrt((1.0 - g) * (1.0 - g) + g * g * p * p) - g * g * q / 2.0 - (1.0 - g);
  return {std::max(0.0, c), std::max(0.0, n)};
}

inline MeasurePair werner_phi_curves(double gamma, double p, double t) {
  const double g = std::exp(-gamma * t);
  const double v = std::max(0.0, g / 2.0 * (g * (1.0 + p) - 2.0 * (1.0 - p)));
  return {v, v};
}

// Werner-like state, gamma = 0 (concurrence and negativity coincide).
inline double werner_like_lossless_curve(double p, double chi12, double t) {
  return 0.5 * std::max(0.0, p * (2.0 * std::abs(std::cos(chi12 * t)) + 1.0) - 1.0);
}

// ---------------------------------------------------------------------------
// Envelopes (chi12 >> gamma). None of these depend on chi12.

namespace detail {

inline double checked_sqrt(double v, const char* where) {
  if (v < -1e-9) throw std::domain_error(std::string(where) + ": negative radicand");
  return std::sqrt(std::max(0.0, v));
}

}  // namespace detail

inline double concurrence_envelope(Decay d) {
  const double g = d.g;
  const double x = 27.0 - 14.0 * g + 3.0 * g * g;
  const double y = detail::checked_sqrt(159.0 - 129.0 * g + 37.0 * g * g - 3.0 * g * g * g, "concurrence_envelope");
  const double z = detail::checked_sqrt((x + y) * (x + y) - 9.0 * y * y, "concurrence_envelope");
  const double inner = detail::checked_sqrt(2.0 * (x - 2.0 * y) * (x + y - z), "concurrence_envelope");
  const double outer = detail::checked_sqrt(x - 2.0 / 3.0 * (z + inner), "concurrence_envelope");
  return g / 4.0 * (outer + g - 1.0);
}

inline double concurrence_envelope(double gamma, double t) { return concurrence_envelope(Decay::at(gamma, t)); }

enum class NegativityEnvelopeForm {
  cube_root,  // accurate form (principal complex cube root)
  simple,     // rational-radical approximation, much less accurate
};

inline double negativity_envelope(Decay d, NegativityEnvelopeForm form = NegativityEnvelopeForm::cube_root) {
  const double g = d.g;
  if (form == NegativityEnvelopeForm::simple) {
    const double g2 = g * g, g3 = g2 * g;
    return 0.5 * detail::checked_sqrt(g3 * (g3 - 3.0 * g2 - g + 11.0) / (g2 - 3.0 * g + 4.0), "negativity_envelope");
  }
  const double g2 = g * g, g3 = g2 * g, g4 = g3 * g, g5 = g4 * g, g6 = g5 * g;
  const double v = 8.0 * g6 - 18.0 * g5 - 93.0 * g4 + 324.0 * g3 - 273.0 * g2 + 180.0 * g - 64.0;
  const double w = 116.0 * g6 - 316.0 * g5 + 297.0 * g4 + 930.0 * g3 - 515.0 * g2 + 624.0 * g + 16.0;
  const complex arg(v, 3.0 * (1.0 - g) * g * detail::checked_sqrt(3.0 * w, "negativity_envelope"));
  const complex root = std::pow(arg, 1.0 / 3.0);  // principal branch
  return (2.0 * root.real() - (2.0 - g) * (2.0 - g) - g) / 6.0;
}

inline double negativity_envelope(double gamma, double t,
                                  NegativityEnvelopeForm form = NegativityEnvelopeForm::cube_root) {
  return negativity_envelope(Decay::at(gamma, t), form);
}

// Werner-like concurrence envelope; reduces to concurrence_envelope at p = 1.
inline double werner_concurrence_envelope(Decay d, double p) {
  const double g = d.g;
  const double G = 2.0 - g;
  const double xp = 3.0 * G * G + 2.0 * G * p + 11.0 * p * p;
  const double yp = 3.0 * G * G * G + G * G * (10.0 + 9.0 * p) + G * (3.0 + 14.0 * p) + p * (9.0 + 16.0 * p);
  const double sy = detail::checked_sqrt(yp, "werner_concurrence_envelope");
  const double a = detail::checked_sqrt(xp + 4.0 * p * sy, "werner_concurrence_envelope");
  const double b = detail::checked_sqrt(xp - 2.0 * p * sy, "werner_concurrence_envelope");
  return g / 4.0 * std::max(0.0, (a - 2.0 * b) / std::sqrt(3.0) + g + p - 2.0);
}

inline double werner_concurrence_envelope(double gamma, double p, double t) {
  return werner_concurrence_envelope(Decay::at(gamma, t), p);
}

// ---------------------------------------------------------------------------
// Numeric envelopes and revival maxima

// Local maxima of a sampled curve by three-point comparison. Endpoints are
// kept when they are not below their neighbour. Throws when two maxima are
// closer than 8 samples (oscillation under-resolved).
inline std::vector<CurvePoint> numeric_envelope(std::span<const CurvePoint> curve) {
  constexpr std::size_t kMinSamplesPerPeriod = 8;
  if (curve.size() < 2) throw std::invalid_argument("numeric_envelope: need at least two samples");
  for (std::size_t i = 1; i < curve.size(); ++i)
    if (!(curve[i].t > curve[i - 1].t)) throw std::invalid_argument("numeric_envelope: times must increase");

  std::vector<std::size_t> idx;
  const std::size_t last = curve.size() - 1;
  if (curve[0].value >= curve[1].value) idx.push_back(0);
  for (std::size_t i = 1; i < last; ++i)
    if (curve[i].value > curve[i - 1].value && curve[i].value >= curve[i + 1].value) idx.push_back(i);
  if (curve[last].value >= curve[last - 1].value) idx.push_back(last);

  for (std::size_t k = 1; k < idx.size(); ++k) {
    const bool interior_pair = idx[k - 1] != 0 && idx[k] != last;
    if (interior_pair && idx[k] - idx[k - 1] < kMinSamplesPerPeriod)
      throw std::invalid_argument("numeric_envelope: curve is under-sampled (fewer than 8 points per period)");
  }
  std::vector<CurvePoint> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(curve[i]);
  return out;
}

// Linear interpolation of an envelope (sorted by t) at time t; flat beyond the ends.
inline double interpolate(std::span<const CurvePoint> points, double t) {
  if (points.empty()) throw std::invalid_argument("interpolate: empty envelope");
  if (t <= points.front().t) return points.front().value;
  if (t >= points.back().t) return points.back().value;
  auto hi = std::upper_bound(points.begin(), points.end(), t,
                             [](double v, const CurvePoint& p) { return v < p.t; });
  auto lo = hi - 1;
  const double w = (t - lo->t) / (hi->t - lo->t);
  return lo->value + w * (hi->value - lo->value);
}

// Golden-section search for the maximum of a unimodal f on [lo, hi].
inline CurvePoint maximize_on_interval(const std::function<double(double)>& f, double lo, double hi,
                                       double tolerance = 1e-13) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tolerance * std::max(1.0, std::abs(a) + std::abs(b))) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  const double t = 0.5 * (a + b);
  CurvePoint best{t, f(t)};
  for (double edge : {lo, hi}) {
    const double v = f(edge);
    if (v > best.value) best = {edge, v};
  }
  return best;
}

// Maximum of f within +-5% of an oscillation period around the nominal time.
inline CurvePoint revival_maximum(const std::function<double(double)>& f, double nominal, double period) {
  const double half = 0.05 * period;
  return maximize_on_interval(f, std::max(0.0, nominal - half), nominal + half);
}

// ---------------------------------------------------------------------------
// Ordering checks

struct ChainPoint {
  double t = 0.0;
  // C_psi >= C_env >= C_like(chi12 = 0) >= C_phi
  double c_psi = 0.0, c_env = 0.0, c_like_uncoupled = 0.0, c_phi = 0.0;
  // N_psi <= N_like(chi12 = 0) <= N_phi <= N_env
  double n_psi = 0.0, n_like_uncoupled = 0.0, n_phi = 0.0, n_env = 0.0;
  bool concurrence_chain = false;
  bool negativity_chain = false;
  bool all_equal = false;  // every link saturated
};

struct RevivalComparison {
  int n = 0;
  double t_nominal = 0.0;
  CurvePoint concurrence_kerr;      // local maximum with cross-coupling
  double concurrence_uncoupled = 0.0;
  CurvePoint negativity_kerr;
  double negativity_uncoupled = 0.0;
  bool holds = false;  // both Kerr maxima >= their uncoupled counterparts
};

struct MeasureOrderingWitness {
  bool found = false;
  double t = 0.0;
  double c_psi = 0.0, c_phi = 0.0, n_psi = 0.0, n_phi = 0.0;
};

struct OrderingReport {
  std::vector<ChainPoint> chains;
  std::vector<RevivalComparison> revivals;
  MeasureOrderingWitness witness;

  bool chains_hold() const {
    return std::all_of(chains.begin(), chains.end(),
                       [](const ChainPoint& c) { return c.concurrence_chain && c.negativity_chain; });
  }
  bool revivals_hold() const {
    return std::all_of(revivals.begin(), revivals.end(), [](const RevivalComparison& r) { return r.holds; });
  }
};

// Bell-like (p absent) or Werner-like (p given) state evolved with the Kerr
// cross-coupling; self-couplings are zero.
inline DensityMatrix2Q bell_like_family_state(std::optional<double> p, double gamma, double chi12, double t) {
  const DensityMatrix2Q rho0 = p ? werner(WernerKind::like, Sign::plus, *p) : to_density(bell_like());
  return propagate(rho0, CavityParams::symmetric(gamma, chi12), t);
}

inline OrderingReport check_ordering_inequalities(double gamma, double chi12, std::optional<double> p,
                                                  std::span<const double> t_grid, int revival_count = 5) {
  constexpr double kSlack = 1e-12;
  if (gamma < 0.0) throw std::invalid_argument("check_ordering_inequalities: gamma must be >= 0");
  OrderingReport out;

  for (double t : t_grid) {
    ChainPoint c;
    c.t = t;
    const auto psi = bell_psi_curves(gamma, t);
    const auto phi = bell_phi_curves(gamma, t);
    const auto like0 = bell_like_uncoupled_curves(gamma, t);
    c.c_psi = psi.concurrence;
    c.c_env = concurrence_envelope(gamma, t);
    c.c_like_uncoupled = like0.concurrence;
    c.c_phi = phi.concurrence;
    c.n_psi = psi.negativity;
    c.n_like_uncoupled = like0.negativity;
    c.n_phi = phi.negativity;
    c.n_env = negativity_envelope(gamma, t);
    c.concurrence_chain = c.c_psi + kSlack >= c.c_env && c.c_env + kSlack >= c.c_like_uncoupled &&
                          c.c_like_uncoupled + kSlack >= c.c_phi;
    c.negativity_chain = c.n_psi <= c.n_like_uncoupled + kSlack && c.n_like_uncoupled <= c.n_phi + kSlack &&
                         c.n_phi <= c.n_env + kSlack;
    auto near = [](double a, double b) { return std::abs(a - b) <= 1e-9; };
    c.all_equal = near(c.c_psi, c.c_env) && near(c.c_env, c.c_like_uncoupled) &&
                  near(c.c_like_uncoupled, c.c_phi) && near(c.n_psi, c.n_like_uncoupled) &&
                  near(c.n_like_uncoupled, c.n_phi) && near(c.n_phi, c.n_env);
    out.chains.push_back(c);

    if (!out.witness.found) {
      const auto params = CavityParams::symmetric(gamma, chi12);
      const auto rho_psi = propagate(to_density(bell_psi(Sign::plus)), params, t);
      const auto rho_phi = propagate(to_density(bell_phi(Sign::plus)), params, t);
      const double cps = concurrence(rho_psi), cph = concurrence(rho_phi);
      const double nps = negativity(rho_psi), nph = negativity(rho_phi);
      if ((cps - cph > kSlack && nph - nps > kSlack) || (cph - cps > kSlack && nps - nph > kSlack))
        out.witness = {true, t, cps, cph, nps, nph};
    }
  }

  if (chi12 != 0.0) {
    const double period = std::numbers::pi / std::abs(chi12);
    for (int n = 1; n <= revival_count; ++n) {
      RevivalComparison r;
      r.n = n;
      r.t_nominal = n * period;
      r.concurrence_kerr = revival_maximum(
          [&](double t) { return concurrence(bell_like_family_state(p, gamma, chi12, t)); }, r.t_nominal, period);
      r.negativity_kerr = revival_maximum(
          [&](double t) { return negativity(bell_like_family_state(p, gamma, chi12, t)); }, r.t_nominal, period);
      r.concurrence_uncoupled = concurrence(bell_like_family_state(p, gamma, 0.0, r.concurrence_kerr.t));
      r.negativity_uncoupled = negativity(bell_like_family_state(p, gamma, 0.0, r.negativity_kerr.t));
      r.holds = r.concurrence_kerr.value + kSlack >= r.concurrence_uncoupled &&
                r.negativity_kerr.value + kSlack >= r.negativity_uncoupled;
      out.revivals.push_back(r);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// EIT cross-coupling estimate

struct EitParams {
  double g13 = 0.0;           // rad/us
  double g24 = 0.0;           // rad/us
  double omega_c = 0.0;       // coupling-field Rabi frequency, rad/us
  double delta_omega2 = 0.0;  // detuning, rad/us
  long n_at = 1;              // atom count
};

struct CrossCouplingEstimate {
  double chi12 = 0.0;        // rad/us
  double guard_ratio = 0.0;  // |g13|^2 n_at / omega_c^2
  bool adiabatic_valid = false;
};

// 2 chi12 = 3 |g13|^2 |g24|^2 n_at / (omega_c^2 delta_omega2). The guard
// ratio must stay below 1 for the adiabatic elimination to hold; a violation
// is reported, not thrown.
inline CrossCouplingEstimate estimate_cross_coupling(const EitParams& eit) {
  if (eit.delta_omega2 == 0.0) throw std::invalid_argument("estimate_cross_coupling: detuning must be nonzero");
  if (!(eit.omega_c > 0.0)) throw std::invalid_argument("estimate_cross_coupling: omega_c must be > 0");
  if (eit.n_at < 1) throw std::invalid_argument("estimate_cross_coupling: n_at must be >= 1");
  const double n = static_cast<double>(eit.n_at);
  const double g13_sq = eit.g13 * eit.g13, g24_sq = eit.g24 * eit.g24;
  const double omega_sq = eit.omega_c * eit.omega_c;
  CrossCouplingEstimate out;
  out.chi12 = 1.5 * g13_sq * g24_sq * n / (omega_sq * eit.delta_omega2);
  out.guard_ratio = g13_sq * n / omega_sq;
  out.adiabatic_valid = out.guard_ratio < 1.0;
  return out;
}

}  // namespace kerrdeco
