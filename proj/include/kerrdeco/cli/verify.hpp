#pragma once

// Verification suite shared by `kerrdeco verify` and the acceptance test.
// Each check records the acceptance criterion it belongs to (0: supporting
// invariant outside the numbered criteria).

#include <algorithm>
#include <cstdio>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kerrdeco/analytics.hpp"
#include "kerrdeco/cli/figures.hpp"
#include "kerrdeco/random.hpp"

namespace kerrdeco::cli {

struct Check {
  std::string id;
  int criterion = 0;
  std::string description;
  bool passed = false;
  std::string detail;
};

enum class VerifyLevel { fast, full };

struct VerifyOptions {
  PropagatorOptions propagator{};  // kerr_phase_sign = -1 is the mutation fixture
};

struct VerifyReport {
  VerifyLevel level = VerifyLevel::fast;
  std::vector<Check> checks;
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

inline VerifyLevel parse_verify_level(const std::string& s) {
  if (s == "fast") return VerifyLevel::fast;
  if (s == "full") return VerifyLevel::full;
  throw ConfigError("verify: unknown level '" + s + "' (expected fast or full)");
}

namespace verify_detail {

inline std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), pattern, a, b, c);
  return buf;
}

inline std::vector<InitialState> all_families() {
  StateSampler sampler(corpus_seed());
  const double r = 1.0 / std::sqrt(2.0);
  return {
      init::BellPsi{Sign::plus},
      init::BellPhi{Sign::minus},
      init::BellLike{},
      init::PlusPlus{},
      init::Separable{{r, complex(0.0, r), 0.6, 0.8}},
      init::WernerPsi{Sign::minus, 0.8},
      init::WernerPhi{Sign::plus, 0.6},
      init::WernerLike{0.5},
      init::CustomPure{sampler.pure()},
      init::CustomMixed{sampler.density()},
  };
}

inline std::vector<double> ten_times() { return uniform_grid(1.0, 10); }
inline std::vector<double> fifty_times() { return uniform_grid(1.0, 50); }

inline bool has_closed_form(const InitialState& s, const CavityParams& p) {
  const bool cross_only = std::holds_alternative<init::BellLike>(s) || std::holds_alternative<init::PlusPlus>(s) ||
                          std::holds_alternative<init::WernerLike>(s);
  const bool fixed = std::holds_alternative<init::BellPsi>(s) || std::holds_alternative<init::BellPhi>(s) ||
                     std::holds_alternative<init::WernerPsi>(s) || std::holds_alternative<init::WernerPhi>(s);
  return fixed || (cross_only && p.chi11 == 0.0 && p.chi22 == 0.0);
}

template <class F>
void for_each_grid_params(F&& f) {
  for (double gamma : {1.0, 4.0, 10.0})
    for (double chi12 : {0.0, 20.0})
      for (double self : {0.0, 7.0}) f(CavityParams::symmetric(gamma, chi12, self));
}

}  // namespace verify_detail

// ---------------------------------------------------------------------------
// Criterion 1

inline Check check_oracle_equivalence(const VerifyOptions& opt) {
  using namespace verify_detail;
  double worst = 0.0;
  const auto families = all_families();
  for_each_grid_params([&](const CavityParams& params) {
    const LindbladIntegrator oracle(params, 2);
    for (const auto& s : families) {
      const DensityMatrix2Q rho0 = initial_density(s);
      const ComplexMatrix embedded = embed_qubits(rho0.matrix(), 2);
      for (double t : ten_times()) {
        const ComplexMatrix reference = qubit_block(oracle.advance(embedded, t), 2);
        worst = std::max(worst, trace_distance(propagate(rho0, params, t, opt.propagator).matrix(), reference));
      }
    }
  });
  return {"oracle_equivalence", 1, "analytic propagator vs RK4 master equation, 10 families x 12 parameter sets",
          worst <= 1e-8, fmt("max trace distance %.3g (limit 1e-08)", worst)};
}

// ---------------------------------------------------------------------------
// Criterion 2

inline Check check_closed_form_matrices(const VerifyOptions& opt) {
  using namespace verify_detail;
  double worst = 0.0;
  int compared = 0;
  const std::vector<InitialState> families{init::BellPsi{Sign::plus},      init::BellPsi{Sign::minus},
                                           init::BellPhi{Sign::plus},      init::BellPhi{Sign::minus},
                                           init::BellLike{},               init::PlusPlus{},
                                           init::WernerPsi{Sign::plus, 0.7}, init::WernerPhi{Sign::minus, 0.7},
                                           init::WernerLike{0.7}};
  for_each_grid_params([&](const CavityParams& params) {
    for (const auto& s : families) {
      if (!has_closed_form(s, params)) continue;
      const DensityMatrix2Q rho0 = initial_density(s);
      for (double t : ten_times()) {
        const ComplexMatrix a = closed_form_rho(s, params, t).matrix();
        const ComplexMatrix b = propagate(rho0, params, t, opt.propagator).matrix();
        worst = std::max(worst, max_abs_diff(a, b));
        ++compared;
      }
    }
  });
  return {"closed_form_matrices", 2, "closed-form evolved matrices vs propagator, elementwise", worst <= 1e-10,
          fmt("max |element difference| %.3g over %.0f matrices (limit 1e-10)", worst, compared)};
}

// ---------------------------------------------------------------------------
// Criterion 3

inline Check check_measure_curves(const VerifyOptions& opt) {
  using namespace verify_detail;
  double worst = 0.0;
  auto track = [&](double a, double b) { worst = std::max(worst, std::abs(a - b)); };
  auto measures = [&](const DensityMatrix2Q& rho0, const CavityParams& params, double t) {
    return report(propagate(rho0, params, t, opt.propagator));
  };
  for (double gamma : {1.0, 4.0, 10.0}) {
    const auto coupled = CavityParams::symmetric(gamma, 20.0);
    const auto uncoupled = CavityParams::symmetric(gamma, 0.0);
    for (double t : fifty_times()) {
      const auto psi = measures(to_density(bell_psi(Sign::plus)), coupled, t);
      track(psi.concurrence, bell_psi_curves(gamma, t).concurrence);
      track(psi.negativity, bell_psi_curves(gamma, t).negativity);
      const auto phi = measures(to_density(bell_phi(Sign::plus)), coupled, t);
      track(phi.concurrence, bell_phi_curves(gamma, t).concurrence);
      track(phi.negativity, bell_phi_curves(gamma, t).negativity);
      const auto like = measures(to_density(bell_like()), uncoupled, t);
      track(like.concurrence, bell_like_uncoupled_curves(gamma, t).concurrence);
      track(like.negativity, bell_like_uncoupled_curves(gamma, t).negativity);
      for (double p : {0.5, 0.8, 1.0}) {
        const auto wpsi = measures(werner(WernerKind::psi, Sign::plus, p), coupled, t);
        track(wpsi.concurrence, werner_psi_curves(gamma, p, t).concurrence);
        track(wpsi.negativity, werner_psi_curves(gamma, p, t).negativity);
        const auto wphi = measures(werner(WernerKind::phi, Sign::plus, p), coupled, t);
        track(wphi.concurrence, werner_phi_curves(gamma, p, t).concurrence);
        track(wphi.negativity, werner_phi_curves(gamma, p, t).negativity);
      }
    }
  }
  const auto lossless = CavityParams::symmetric(0.0, 20.0);
  for (double p : {0.5, 0.8, 1.0})
    for (double t : fifty_times()) {
      const auto w = measures(werner(WernerKind::like, Sign::plus, p), lossless, t);
      track(w.concurrence, werner_like_lossless_curve(p, 20.0, t));
      track(w.negativity, werner_like_lossless_curve(p, 20.0, t));
    }
  return {"measure_curves", 3, "closed-form C and N curves vs measures of propagated states", worst <= 1e-9,
          fmt("max deviation %.3g (limit 1e-09)", worst)};
}

inline Check check_werner_initial_value() {
  double worst = 0.0;
  for (double p : {0.4, 0.6, 0.8, 1.0}) {
    const double expected = (3.0 * p - 1.0) / 2.0;
    for (auto kind : {WernerKind::psi, WernerKind::phi, WernerKind::like}) {
      const auto rho = werner(kind, Sign::plus, p);
      worst = std::max({worst, std::abs(concurrence(rho) - expected), std::abs(negativity(rho) - expected)});
    }
    worst = std::max({worst, std::abs(werner_psi_curves(4.0, p, 0.0).concurrence - expected),
                      std::abs(werner_phi_curves(4.0, p, 0.0).negativity - expected),
                      std::abs(werner_like_lossless_curve(p, 20.0, 0.0) - expected)});
  }
  return {"werner_initial_value", 3, "Werner states start at (3p-1)/2", worst <= 1e-10,
          verify_detail::fmt("max deviation %.3g (limit 1e-10)", worst)};
}

// ---------------------------------------------------------------------------
// Criterion 4

inline Check check_ordering_relativity(const VerifyOptions& opt) {
  const double gamma = 4.0, chi12 = 20.0, t = 0.5 / gamma;
  const auto params = CavityParams::symmetric(gamma, chi12);
  const auto rho_psi = propagate(to_density(bell_psi(Sign::plus)), params, t, opt.propagator);
  const auto rho_phi = propagate(to_density(bell_phi(Sign::plus)), params, t, opt.propagator);
  const double cps = concurrence(rho_psi), cph = concurrence(rho_phi);
  const double nps = negativity(rho_psi), nph = negativity(rho_phi);
  const double dev = std::max({std::abs(cps - std::exp(-0.5)), std::abs(cph - std::exp(-1.0)),
                               std::abs(nps - bell_psi_curves(gamma, t).negativity),
                               std::abs(nph - bell_phi_curves(gamma, t).negativity)});
  const bool violated = cps > cph && nps < nph;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "C_psi=%.5f > C_phi=%.5f, N_psi=%.5f < N_phi=%.5f; max deviation %.3g (limit 1e-09)",
                cps, cph, nps, nph, dev);
  return {"ordering_relativity", 4, "at gamma t = 0.5 concurrence and negativity rank psi and phi oppositely",
          violated && dev <= 1e-9, buf};
}

// ---------------------------------------------------------------------------
// Criterion 5

inline Check check_inequality_chains() {
  const double gamma = 4.0;
  std::vector<double> ts;
  for (int k = 1; k <= 50; ++k) ts.push_back(k * 0.02);
  const auto rep = check_ordering_inequalities(gamma, 5.0 * gamma, std::nullopt, ts, 0);
  int failures = 0;
  for (const auto& c : rep.chains) failures += !(c.concurrence_chain && c.negativity_chain);

  // last negativity link against the actual revival maxima; chi/gamma = 1 is reported only
  auto link_failures = [&](double ratio) {
    const double chi12 = ratio * gamma, period = std::numbers::pi / chi12;
    int bad = 0;
    for (int n = 1; n <= 5; ++n) {
      const auto m = revival_maximum(
          [&](double t) { return negativity(bell_like_family_state(std::nullopt, gamma, chi12, t)); }, n * period,
          period);
      bad += m.value + 1e-12 < bell_phi_curves(gamma, m.t).negativity;
    }
    return bad;
  };
  const int bad5 = link_failures(5.0), bad100 = link_failures(100.0), bad1 = link_failures(1.0);
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "%d/50 chain failures; numeric N maxima >= N_phi: %d/5 failures at chi/gamma=5, %d/5 at 100 "
                "(chi/gamma=1, reported only: %d/5)",
                failures, bad5, bad100, bad1);
  return {"inequality_chains", 5, "concurrence and negativity chains at 50 times, chi12/gamma = 5",
          failures == 0 && bad5 == 0 && bad100 == 0, buf};
}

inline Check check_kerr_revivals() {
  int failures = 0, total = 0;
  for (double ratio : {5.0, 100.0})
    for (double p : {0.6, 0.8, 1.0}) {
      const auto rep = check_ordering_inequalities(4.0, 4.0 * ratio, p, {}, 5);
      for (const auto& r : rep.revivals) {
        ++total;
        failures += !r.holds;
      }
    }
  return {"kerr_revivals", 5, "Werner-like maxima near n pi/chi12 exceed the uncoupled curve, p = 0.6, 0.8, 1",
          failures == 0,
          verify_detail::fmt("%.0f/%.0f comparisons failed (chi12/gamma = 5 and 100, n = 1..5)", failures, total)};
}

// ---------------------------------------------------------------------------
// Criterion 6 (full level)

struct EnvelopeSample {
  int n = 0;
  double t = 0.0;
  double curve = 0.0;
  double envelope = 0.0;
};

// Curve values at the exact revival times n pi/chi12 for chi12/gamma = 100.
inline std::vector<EnvelopeSample> envelope_samples(const std::function<double(double)>& curve,
                                                    const std::function<double(double)>& envelope, double gamma,
                                                    double offset = 0.0) {
  const double chi12 = 100.0 * gamma;
  std::vector<EnvelopeSample> out;
  for (int n = 1; n <= 5; ++n) {
    const double t = (n - offset) * std::numbers::pi / chi12;
    out.push_back({n, t, curve(t), envelope(t)});
  }
  return out;
}

inline double max_deviation(const std::vector<EnvelopeSample>& s) {
  double worst = 0.0;
  for (const auto& x : s) worst = std::max(worst, std::abs(x.curve - x.envelope));
  return worst;
}

inline Check check_concurrence_envelope() {
  const double gamma = 4.0, chi12 = 100.0 * gamma;
  const auto s = envelope_samples(
      [&](double t) { return concurrence(bell_like_family_state(std::nullopt, gamma, chi12, t)); },
      [&](double t) { return concurrence_envelope(gamma, t); }, gamma);
  const double dev = max_deviation(s);
  return {"concurrence_envelope", 6, "concurrence envelope formula at t_n, chi12/gamma = 100", dev <= 2e-3,
          verify_detail::fmt("max |C(t_n) - envelope| %.3g (limit 2e-03)", dev)};
}

inline Check check_negativity_envelope() {
  const double gamma = 4.0, chi12 = 100.0 * gamma;
  const auto s = envelope_samples(
      [&](double t) { return negativity(bell_like_family_state(std::nullopt, gamma, chi12, t)); },
      [&](double t) { return negativity_envelope(gamma, t); }, gamma);
  const double dev = max_deviation(s);
  return {"negativity_envelope", 6, "negativity envelope (cube-root form) at t_n, chi12/gamma = 100", dev <= 2e-3,
          verify_detail::fmt("max |N(t_n) - envelope| %.3g (limit 2e-03)", dev)};
}

inline Check check_werner_envelope() {
  const double gamma = 4.0, chi12 = 100.0 * gamma;
  double dev = 0.0;
  for (double p : {0.6, 0.8, 1.0}) {
    const auto s = envelope_samples(
        [&](double t) { return concurrence(bell_like_family_state(p, gamma, chi12, t)); },
        [&](double t) { return werner_concurrence_envelope(gamma, p, t); }, gamma);
    dev = std::max(dev, max_deviation(s));
  }
  return {"werner_concurrence_envelope", 6, "Werner-like concurrence envelope at t_n, p = 0.6, 0.8, 1",
          dev <= 2e-3, verify_detail::fmt("max |C(t_n) - envelope| %.3g (limit 2e-03)", dev)};
}

inline Check check_simple_negativity_form() {
  const double gamma = 4.0, chi12 = 100.0 * gamma;
  auto curve = [&](double t) { return negativity(bell_like_family_state(std::nullopt, gamma, chi12, t)); };
  const auto cube = envelope_samples(curve, [&](double t) { return negativity_envelope(gamma, t); }, gamma);
  const auto simple = envelope_samples(
      curve, [&](double t) { return negativity_envelope(gamma, t, NegativityEnvelopeForm::simple); }, gamma);
  bool strictly = true;
  std::ostringstream detail;
  detail << "deviation simple vs cube-root at n=1..5:";
  for (std::size_t i = 0; i < cube.size(); ++i) {
    const double dc = std::abs(cube[i].curve - cube[i].envelope), ds = std::abs(simple[i].curve - simple[i].envelope);
    strictly = strictly && ds > dc;
    detail << verify_detail::fmt(" %.2g/%.2g", ds, dc);
  }
  return {"simple_negativity_form", 6, "simple negativity form deviates more than the cube-root form at every t_n",
          strictly, detail.str()};
}

inline Check check_plus_plus_envelope() {
  const double gamma = 4.0, chi12 = 100.0 * gamma;
  const auto params = CavityParams::symmetric(gamma, chi12);
  const DensityMatrix2Q rho0 = to_density(plus_plus());
  // |+,+> revives half a period after the Bell-like state
  const auto c = envelope_samples([&](double t) { return concurrence(propagate(rho0, params, t)); },
                                  [&](double t) { return concurrence_envelope(gamma, t); }, gamma, 0.5);
  const auto n = envelope_samples([&](double t) { return negativity(propagate(rho0, params, t)); },
                                  [&](double t) { return negativity_envelope(gamma, t); }, gamma, 0.5);
  const double dev = std::max(max_deviation(c), max_deviation(n));
  return {"plus_plus_envelope", 0, "|+,+> maxima follow the Bell-like envelopes, chi12/gamma = 100", dev <= 2e-3,
          verify_detail::fmt("max deviation %.3g (limit 2e-03)", dev)};
}

// ---------------------------------------------------------------------------
// Criterion 7

inline Check check_lossless_product_peaks(const VerifyOptions& opt) {
  StateSampler sampler(corpus_seed());
  const double chi12 = 20.0, t = std::numbers::pi / (2.0 * chi12);
  const CavityParams params = CavityParams::symmetric(0.0, chi12);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto [d1, d2] = sampler.qubit();
    const auto [d3, d4] = sampler.qubit();
    const double expected = 4.0 * std::abs(d1 * d2 * d3 * d4);
    const auto r = report(propagate(to_density(separable(d1, d2, d3, d4)), params, t, opt.propagator));
    worst = std::max({worst, std::abs(r.concurrence - expected), std::abs(r.negativity - expected)});
  }
  return {"lossless_product_peaks", 7, "product states peak at 4|d1 d2 d3 d4| when chi12 t = pi/2", worst <= 1e-10,
          verify_detail::fmt("max deviation %.3g over 20 random product states (limit 1e-10)", worst)};
}

inline Check check_lossless_bell_like(const VerifyOptions& opt) {
  const double chi12 = 20.0;
  const auto params = CavityParams::symmetric(0.0, chi12);
  double worst = 0.0;
  for (double t : verify_detail::fifty_times()) {
    const auto r = report(propagate(to_density(bell_like()), params, t, opt.propagator));
    const double expected = std::abs(std::cos(chi12 * t));
    worst = std::max({worst, std::abs(r.concurrence - expected), std::abs(r.negativity - expected),
                      std::abs(unitary_pure_entanglement(bell_like(), chi12, t) - expected)});
  }
  return {"lossless_bell_like", 7, "lossless Bell-like entanglement equals |cos chi12 t|", worst <= 1e-10,
          verify_detail::fmt("max deviation %.3g (limit 1e-10)", worst)};
}

inline Check check_lossless_werner_like(const VerifyOptions& opt) {
  const double chi12 = 20.0;
  const auto params = CavityParams::symmetric(0.0, chi12);
  double worst = 0.0;
  for (double p : {0.4, 0.6, 0.8, 1.0})
    for (double t : verify_detail::fifty_times()) {
      const auto r = report(propagate(werner(WernerKind::like, Sign::plus, p), params, t, opt.propagator));
      const double expected = werner_like_lossless_curve(p, chi12, t);
      worst = std::max({worst, std::abs(r.concurrence - expected), std::abs(r.negativity - expected)});
    }
  return {"lossless_werner_like", 7, "lossless Werner-like curve", worst <= 1e-10,
          verify_detail::fmt("max deviation %.3g (limit 1e-10)", worst)};
}

inline Check check_lossless_bell_constant(const VerifyOptions& opt) {
  const CavityParams params{0.0, 0.0, 7.0, -3.0, 20.0, 0.0, 0.0};
  double worst = 0.0;
  for (const auto& psi : {bell_psi(Sign::plus), bell_psi(Sign::minus), bell_phi(Sign::plus), bell_phi(Sign::minus)})
    for (double t : verify_detail::fifty_times()) {
      const auto r = report(propagate(to_density(psi), params, t, opt.propagator));
      worst = std::max({worst, std::abs(r.concurrence - 1.0), std::abs(r.negativity - 1.0)});
    }
  return {"lossless_bell_constant", 7, "Bell states stay maximally entangled without damping", worst <= 1e-10,
          verify_detail::fmt("max deviation from 1: %.3g (limit 1e-10)", worst)};
}

// ---------------------------------------------------------------------------
// Criterion 8

inline Check check_negativity_below_concurrence() {
  StateSampler sampler(corpus_seed());
  double worst = -1.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto rho = sampler.density();
    worst = std::max(worst, negativity(rho) - concurrence(rho));
  }
  return {"negativity_below_concurrence", 8, "N <= C on 1000 random density matrices", worst <= 1e-9,
          verify_detail::fmt("max N - C = %.3g (limit 1e-09)", worst)};
}

inline Check check_pure_state_equality() {
  StateSampler sampler(corpus_seed());
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto psi = sampler.pure();
    const auto rho = to_density(psi);
    const double c = pure_concurrence(psi);
    worst = std::max({worst, std::abs(concurrence(rho) - c), std::abs(negativity(rho) - c)});
  }
  return {"pure_state_equality", 8, "C = N = 2|c00 c11 - c01 c10| on 1000 random pure states", worst <= 1e-9,
          verify_detail::fmt("max deviation %.3g (limit 1e-09)", worst)};
}

inline Check check_local_unitary_invariance() {
  StateSampler sampler(corpus_seed());
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = sampler.density();
    const ComplexMatrix u = kron(sampler.unitary(2), sampler.unitary(2));
    const DensityMatrix2Q rotated(u * rho.matrix() * u.adjoint());
    worst = std::max({worst, std::abs(concurrence(rotated) - concurrence(rho)),
                      std::abs(negativity(rotated) - negativity(rho))});
  }
  return {"local_unitary_invariance", 8, "C and N invariant under local unitaries (200 states)", worst <= 1e-9,
          verify_detail::fmt("max change %.3g (limit 1e-09)", worst)};
}

inline Check check_werner_equality(const VerifyOptions& opt) {
  double worst = 0.0;
  const auto params = CavityParams::symmetric(4.0, 20.0);
  for (int k = 0; k <= 20; ++k) {
    const double p = k / 20.0;
    for (double t : verify_detail::ten_times()) {
      const auto rho = propagate(werner(WernerKind::phi, Sign::plus, p), params, t, opt.propagator);
      const double expected = werner_phi_curves(4.0, p, t).concurrence;
      worst = std::max({worst, std::abs(concurrence(rho) - negativity(rho)), std::abs(concurrence(rho) - expected)});
    }
  }
  return {"werner_phi_equality", 8, "evolved Werner-phi states have C = N (21 p values x 10 times)", worst <= 1e-9,
          verify_detail::fmt("max deviation %.3g (limit 1e-09)", worst)};
}

// ---------------------------------------------------------------------------
// Criterion 9 (in-process; the acceptance test also compares two CLI runs)

inline Check check_figure_determinism() {
  std::ostringstream first, second;
  run_figure("fig1", {}, first);
  run_figure("fig1", {}, second);
  const bool same = first.str() == second.str() && !first.str().empty();
  return {"figure_determinism", 9, "fig1 rendered twice is byte-identical", same,
          verify_detail::fmt("%.0f bytes", static_cast<double>(first.str().size()))};
}

// ---------------------------------------------------------------------------
// Criterion 10

inline Check check_cross_coupling_estimate() {
  const auto est = estimate_cross_coupling({1.0, 1.0, 10.0, 5.0, 100});
  const auto below = estimate_cross_coupling({1.0, 1.0, 10.0, 5.0, 99});
  const auto above = estimate_cross_coupling({1.0, 1.0, 10.0, 5.0, 101});
  const bool ok = std::abs(est.chi12 - 0.3) <= 1e-12 && !est.adiabatic_valid && below.adiabatic_valid &&
                  !above.adiabatic_valid;
  char buf[200];
  std::snprintf(buf, sizeof(buf), "chi12 = %.12g rad/us; guard valid at n_at = 99/100/101: %d/%d/%d", est.chi12,
                below.adiabatic_valid, est.adiabatic_valid, above.adiabatic_valid);
  return {"cross_coupling_estimate", 10, "EIT cross-coupling estimate and adiabatic guard", ok, buf};
}

// ---------------------------------------------------------------------------
// Supporting invariants

inline Check check_propagation_invariants(const VerifyOptions& opt) {
  StateSampler sampler(corpus_seed());
  double trace_err = 0.0, herm_err = 0.0, min_eig = 1.0, semigroup = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const CavityParams params{sampler.uniform(0.1, 10), sampler.uniform(0.1, 10), sampler.uniform(-20, 20),
                              sampler.uniform(-20, 20), sampler.uniform(-20, 20), 0.0, 0.0};
    const auto rho0 = sampler.density();
    const double t1 = sampler.uniform(0, 0.5), t2 = sampler.uniform(0, 0.5);
    const ComplexMatrix m = propagate(rho0, params, t1 + t2, opt.propagator).matrix();
    trace_err = std::max(trace_err, std::abs(m.trace() - 1.0));
    herm_err = std::max(herm_err, max_abs_diff(m, m.adjoint()));
    const auto ev = hermitian_eigenvalues(0.5 * (m + m.adjoint()));
    min_eig = std::min(min_eig, *std::min_element(ev.begin(), ev.end()));
    const ComplexMatrix two_step =
        propagate(propagate(rho0, params, t1, opt.propagator), params, t2, opt.propagator).matrix();
    semigroup = std::max(semigroup, max_abs_diff(two_step, m));
  }
  const bool ok = trace_err <= 1e-12 && herm_err <= 1e-12 && min_eig >= -1e-10 && semigroup <= 1e-10;
  char buf[200];
  std::snprintf(buf, sizeof(buf), "trace %.2g, hermiticity %.2g, min eigenvalue %.2g, semigroup %.2g", trace_err,
                herm_err, min_eig, semigroup);
  return {"propagation_invariants", 0, "trace, hermiticity, positivity and semigroup property of the propagator", ok,
          buf};
}

// ---------------------------------------------------------------------------

inline VerifyReport run_verify(VerifyLevel level, const VerifyOptions& opt = {}) {
  VerifyReport rep;
  rep.level = level;
  auto add = [&](Check c) { rep.checks.push_back(std::move(c)); };
  add(check_oracle_equivalence(opt));
  add(check_closed_form_matrices(opt));
  add(check_measure_curves(opt));
  add(check_werner_initial_value());
  add(check_ordering_relativity(opt));
  add(check_inequality_chains());
  add(check_kerr_revivals());
  add(check_lossless_product_peaks(opt));
  add(check_lossless_bell_like(opt));
  add(check_lossless_werner_like(opt));
  add(check_lossless_bell_constant(opt));
  add(check_negativity_below_concurrence());
  add(check_pure_state_equality());
  add(check_local_unitary_invariance());
  add(check_werner_equality(opt));
  add(check_figure_determinism());
  add(check_cross_coupling_estimate());
  add(check_propagation_invariants(opt));
  if (level == VerifyLevel::full) {
    add(check_concurrence_envelope());
    add(check_negativity_envelope());
    add(check_werner_envelope());
    add(check_simple_negativity_form());
    add(check_plus_plus_envelope());
  }
  return rep;
}

inline void write_verify_text(const VerifyReport& rep, std::ostream& os) {
  std::size_t failed = 0;
  for (const auto& c : rep.checks) {
    os << (c.passed ? "PASS " : "FAIL ") << c.id << ": " << c.detail << '\n';
    failed += !c.passed;
  }
  os << rep.checks.size() - failed << "/" << rep.checks.size() << " checks passed ("
     << (rep.level == VerifyLevel::full ? "full" : "fast") << ")\n";
}

inline void write_verify_json(const VerifyReport& rep, std::ostream& os) {
  nlohmann::json doc;
  doc["level"] = rep.level == VerifyLevel::full ? "full" : "fast";
  doc["passed"] = rep.passed();
  doc["checks"] = nlohmann::json::array();
  std::size_t failed = 0;
  for (const auto& c : rep.checks) {
    doc["checks"].push_back(
        {{"id", c.id}, {"criterion", c.criterion}, {"passed", c.passed}, {"description", c.description},
         {"detail", c.detail}});
    failed += !c.passed;
  }
  doc["total"] = rep.checks.size();
  doc["failed"] = failed;
  os << doc.dump(2) << '\n';
}

}  // namespace kerrdeco::cli
