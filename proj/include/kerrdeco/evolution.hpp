#pragma once

// Time evolution of two cavity-mode qubits under Kerr coupling and damping.
//
// Three engines:
//   propagate        - analytic quiet-reservoir solution, summed over p1, p2 in {0, 1}
//   integrate_master - fixed-step RK4 on the master equation in a truncated Fock space
//   closed_form_rho  - closed-form evolved matrices for the named initial families
//
// Units: rates in rad/us, times in us.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "kerrdeco/linalg.hpp"
#include "kerrdeco/states.hpp"

namespace kerrdeco {

struct CavityParams {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double chi11 = 0.0;
  double chi22 = 0.0;
  double chi12 = 0.0;  // applied as both chi_12 and chi_21
  double nbar1 = 0.0;
  double nbar2 = 0.0;

  // Equal damping gamma on both modes, cross-coupling chi12, optional equal self-coupling.
  static CavityParams symmetric(double gamma, double chi12, double chi_self = 0.0) {
    return {gamma, gamma, chi_self, chi_self, chi12, 0.0, 0.0};
  }

  double gamma(int mode) const { return mode == 1 ? gamma1 : gamma2; }
  double chi(int i, int j) const {
    if (i == 1 && j == 1) return chi11;
    if (i == 2 && j == 2) return chi22;
    return chi12;
  }
  bool quiet() const { return nbar1 == 0.0 && nbar2 == 0.0; }

  void validate() const {
    if (!(gamma1 >= 0.0 && gamma2 >= 0.0)) throw std::invalid_argument("CavityParams: damping must be >= 0");
    if (!(nbar1 >= 0.0 && nbar2 >= 0.0))
      throw std::invalid_argument("CavityParams: thermal occupations must be >= 0");
    if (!std::isfinite(chi11) || !std::isfinite(chi22) || !std::isfinite(chi12))
      throw std::invalid_argument("CavityParams: Kerr constants must be finite");
  }
};

// Sign multiplying the explicit +i(chi_j1 + chi_j2)(m_j - n_j)t phase of R_j.
// +1 reproduces the master equation; -1 exists only as a mutation fixture.
struct PropagatorOptions {
  double kerr_phase_sign = 1.0;
};

// R_j(m_j, n_j, p_j) restricted to photon numbers in {0, 1}. `mode` is 1 or 2.
inline complex rj_factor(int mode, int m1, int n1, int m2, int n2, int p, const CavityParams& params,
                         double t, const PropagatorOptions& opts = {}) {
  if (mode != 1 && mode != 2) throw std::invalid_argument("rj_factor: mode must be 1 or 2");
  for (int v : {m1, n1, m2, n2, p})
    if (v != 0 && v != 1) throw std::invalid_argument("rj_factor: indices must lie in {0, 1}");
  if (t < 0.0) throw std::invalid_argument("rj_factor: t must be >= 0");

  const double gamma = params.gamma(mode);
  const int m = mode == 1 ? m1 : m2;
  const int n = mode == 1 ? n1 : n2;
  const complex x(gamma, 2.0 * (params.chi(mode, 1) * (m1 - n1) + params.chi(mode, 2) * (m2 - n2)));

  complex amplitude = 1.0;
  if (p == 1) {
    const double binomial = static_cast<double>((m + 1) * (n + 1));
    const complex xt = x * t;
    // gamma/x (1 - e^{-xt}) -> gamma t (1 - xt/2) as xt -> 0
    const complex transfer =
        std::abs(xt) < 1e-8 ? gamma * t * (1.0 - 0.5 * xt) : gamma / x * (1.0 - std::exp(-xt));
    amplitude = std::sqrt(binomial) * transfer;
  }
  const double phase =
      opts.kerr_phase_sign * (params.chi(mode, 1) + params.chi(mode, 2)) * (m - n) * t;
  const complex exponent = complex(0.0, phase) - (x * static_cast<double>(m + n + 1) - gamma) * (t / 2.0);
  return amplitude * std::exp(exponent);
}

inline DensityMatrix2Q propagate(const DensityMatrix2Q& rho0, const CavityParams& params, double t,
                                 const PropagatorOptions& opts = {}) {
  params.validate();
  if (!params.quiet())
    throw std::invalid_argument(
        "propagate: analytic solution requires nbar1 = nbar2 = 0; use integrate_master for thermal reservoirs");
  if (t < 0.0) throw std::invalid_argument("propagate: t must be >= 0");

  ComplexMatrix out(4);
  for (int a = 0; a < 4; ++a) {
    const int m1 = a >> 1, m2 = a & 1;
    for (int b = 0; b < 4; ++b) {
      const int n1 = b >> 1, n2 = b & 1;
      complex sum = 0.0;
      for (int p1 = 0; p1 <= 1; ++p1) {
        if (m1 + p1 > 1 || n1 + p1 > 1) continue;
        for (int p2 = 0; p2 <= 1; ++p2) {
          if (m2 + p2 > 1 || n2 + p2 > 1) continue;
          const complex source = rho0((m1 + p1) * 2 + (m2 + p2), (n1 + p1) * 2 + (n2 + p2));
          if (source == complex{}) continue;
          sum += rj_factor(1, m1, n1, m2, n2, p1, params, t, opts) *
                 rj_factor(2, m1, n1, m2, n2, p2, params, t, opts) * source;
        }
      }
      out(a, b) = sum;
    }
  }
  return DensityMatrix2Q(std::move(out));
}

// ---------------------------------------------------------------------------
// Master-equation oracle

inline double default_oracle_step(const CavityParams& params, std::size_t fock_dim) {
  const double gamma_max = std::max(params.gamma1, params.gamma2);
  const double d = static_cast<double>(fock_dim);
  const double chi_sum = std::abs(params.chi11) + std::abs(params.chi22) + 2.0 * std::abs(params.chi12);
  const double chi_max = std::max({std::abs(params.chi11), std::abs(params.chi22), std::abs(params.chi12)});
  const double base = 0.1 / (gamma_max + 2.0 * chi_sum * d + 1.0);
  const double guard_rate = gamma_max + 2.0 * chi_max * d * d;
  const double stable = guard_rate > 0.0 ? std::min(base, 0.099 / guard_rate) : base;
  // 1/16 of the stability-limited step keeps the h^4 truncation error near 1e-11
  return stable / 16.0;
}

class LindbladIntegrator {
 public:
  // step <= 0 selects default_oracle_step.
  LindbladIntegrator(const CavityParams& params, std::size_t fock_dim, double step = 0.0)
      : fock_dim_(fock_dim) {
    params.validate();
    if (fock_dim < 2) throw std::invalid_argument("integrate_master: fock_dim must be >= 2");
    step_ = step > 0.0 ? step : default_oracle_step(params, fock_dim);
    const double d = static_cast<double>(fock_dim);
    const double gamma_max = std::max(params.gamma1, params.gamma2);
    const double chi_max = std::max({std::abs(params.chi11), std::abs(params.chi22), std::abs(params.chi12)});
    if ((gamma_max + 2.0 * chi_max * d * d) * step_ > 0.1)
      throw std::invalid_argument("integrate_master: step " + std::to_string(step_) +
                                  " violates the RK4 stability guard");

    ComplexMatrix a(fock_dim), number(fock_dim);
    for (std::size_t n = 1; n < fock_dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    for (std::size_t n = 0; n < fock_dim; ++n) number(n, n) = static_cast<double>(n);
    const ComplexMatrix id = ComplexMatrix::identity(fock_dim);
    const ComplexMatrix a1 = kron(a, id), a2 = kron(id, a);
    const ComplexMatrix n1 = kron(number, id), n2 = kron(id, number);

    // H_NL = sum_{i,j} chi_ij n_i n_j (both orderings of the cross term)
    ComplexMatrix h = params.chi11 * (n1 * n1) + params.chi22 * (n2 * n2) +
                      params.chi12 * (n1 * n2) + params.chi12 * (n2 * n1);

    const double gammas[] = {params.gamma1, params.gamma2};
    const double nbars[] = {params.nbar1, params.nbar2};
    const ComplexMatrix* lowering[] = {&a1, &a2};
    for (int j = 0; j < 2; ++j) {
      const double down = gammas[j] * (nbars[j] + 1.0);
      const double up = gammas[j] * nbars[j];
      if (down > 0.0) jumps_.push_back(std::sqrt(down) * *lowering[j]);
      if (up > 0.0) jumps_.push_back(std::sqrt(up) * lowering[j]->adjoint());
    }
    h_eff_ = h;
    for (const auto& l : jumps_) {
      jumps_adj_.push_back(l.adjoint());
      h_eff_ -= complex(0.0, 0.5) * (jumps_adj_.back() * l);
    }
    h_eff_adj_ = h_eff_.adjoint();
    build_step_map();
  }

  double step() const { return step_; }
  std::size_t fock_dim() const { return fock_dim_; }

  // d rho/dt = -i(H_eff rho - rho H_eff^dag) + sum_k L_k rho L_k^dag
  ComplexMatrix derivative(const ComplexMatrix& rho) const {
    ComplexMatrix out = complex(0.0, -1.0) * (h_eff_ * rho - rho * h_eff_adj_);
    for (std::size_t k = 0; k < jumps_.size(); ++k) out += jumps_[k] * rho * jumps_adj_[k];
    return out;
  }

  // Classic RK4 with ceil(dt / step) equal substeps. The generator is constant,
  // so one RK4 step is the fixed linear map sum_{k<=4} (hL)^k / k! on vec(rho);
  // the substeps are applied as a binary power of that map.
  ComplexMatrix advance(const ComplexMatrix& rho, double dt) const {
    if (dt < 0.0) throw std::invalid_argument("integrate_master: t must be >= 0");
    const std::size_t dim = fock_dim_ * fock_dim_;
    if (rho.dim() != dim) throw std::invalid_argument("integrate_master: rho0 dimension must be fock_dim^2");
    if (dt == 0.0) return rho;
    const auto steps = std::max<std::size_t>(static_cast<std::size_t>(std::ceil(dt / step_ - 1e-9)), 1);
    const double h = dt / static_cast<double>(steps);
    if (!(cached_steps_ == steps && cached_h_ == h)) {
      ComplexMatrix one = rk4_map(h);
      ComplexMatrix power = ComplexMatrix::identity(dim * dim);
      for (std::size_t n = steps;;) {
        if (n & 1) power = power * one;
        n >>= 1;
        if (n == 0) break;
        one = one * one;
      }
      cached_map_ = std::move(power);
      cached_steps_ = steps;
      cached_h_ = h;
    }
    ComplexMatrix out(dim);
    const std::size_t n2 = dim * dim;
    for (std::size_t r = 0; r < n2; ++r) {
      complex acc = 0.0;
      for (std::size_t c = 0; c < n2; ++c) acc += cached_map_(r, c) * rho(c / dim, c % dim);
      out(r / dim, r % dim) = acc;
    }
    return out;
  }

 private:
  void build_step_map() {
    const std::size_t dim = fock_dim_ * fock_dim_, n2 = dim * dim;
    generator_ = ComplexMatrix(n2);
    for (std::size_t c = 0; c < n2; ++c) {
      ComplexMatrix unit(dim);
      unit(c / dim, c % dim) = 1.0;
      const ComplexMatrix d = derivative(unit);
      for (std::size_t r = 0; r < n2; ++r) generator_(r, c) = d(r / dim, r % dim);
    }
  }

  ComplexMatrix rk4_map(double h) const {
    const ComplexMatrix id = ComplexMatrix::identity(generator_.dim());
    const ComplexMatrix hl = h * generator_;
    return id + hl * (id + (0.5 * hl) * (id + (1.0 / 3.0) * hl * (id + 0.25 * hl)));
  }

  std::size_t fock_dim_;
  double step_ = 0.0;
  ComplexMatrix h_eff_, h_eff_adj_;
  std::vector<ComplexMatrix> jumps_, jumps_adj_;
  ComplexMatrix generator_;
  mutable ComplexMatrix cached_map_;
  mutable std::size_t cached_steps_ = 0;
  mutable double cached_h_ = 0.0;
};

inline ComplexMatrix integrate_master(const ComplexMatrix& rho0, const CavityParams& params, double t,
                                      std::size_t fock_dim, double step = 0.0) {
  return LindbladIntegrator(params, fock_dim, step).advance(rho0, t);
}

// |m1 m2> -> index m1 * fock_dim + m2
inline ComplexMatrix embed_qubits(const ComplexMatrix& rho, std::size_t fock_dim) {
  if (rho.dim() != 4) throw std::invalid_argument("embed_qubits: expected a 4x4 matrix");
  ComplexMatrix out(fock_dim * fock_dim);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      out((a >> 1) * fock_dim + (a & 1), (b >> 1) * fock_dim + (b & 1)) = rho(a, b);
  return out;
}

inline ComplexMatrix qubit_block(const ComplexMatrix& rho, std::size_t fock_dim) {
  if (rho.dim() != fock_dim * fock_dim) throw std::invalid_argument("qubit_block: dimension mismatch");
  ComplexMatrix out(4);
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      out(a, b) = rho((a >> 1) * fock_dim + (a & 1), (b >> 1) * fock_dim + (b & 1));
  return out;
}

// Qubit block as a DensityMatrix2Q: hermitized, and renormalized when
// `renormalize` is set (thermal reservoirs leak population out of the block).
inline DensityMatrix2Q qubit_density(const ComplexMatrix& rho, std::size_t fock_dim, bool renormalize) {
  ComplexMatrix block = qubit_block(rho, fock_dim);
  ComplexMatrix herm = 0.5 * (block + block.adjoint());
  if (renormalize) {
    const double tr = herm.trace().real();
    if (!(tr > 0.0)) throw std::domain_error("qubit_density: no population left in the qubit subspace");
    herm *= 1.0 / tr;
  }
  return DensityMatrix2Q(std::move(herm));
}

// ---------------------------------------------------------------------------
// Printed closed forms

namespace detail {

inline ComplexMatrix bell_like_evolved(double gamma, double chi12, double t, bool plus_plus) {
  const double g = std::exp(-gamma * t);
  complex f = std::exp(complex(0.0, 2.0 * chi12 * t));
  const complex denom(gamma, -2.0 * chi12);
  complex h;
  if (plus_plus) {
    f = -f;
    h = std::abs(denom) == 0.0 ? complex(1.0) : (gamma * (2.0 + f * g) - complex(0.0, 2.0 * chi12)) / denom;
  } else {
    h = std::abs(denom) == 0.0 ? complex(1.0) : (gamma * f * g - complex(0.0, 2.0 * chi12)) / denom;
  }
  const double sg = std::sqrt(g), g32 = g * sg;
  const complex hc = std::conj(h), fc = std::conj(f);
  ComplexMatrix m{
      {(2.0 - g) * (2.0 - g), h * sg, h * sg, -f * g},
      {hc * sg, g * (2.0 - g), g, -f * g32},
      {hc * sg, g, g * (2.0 - g), -f * g32},
      {-fc * g, -fc * g32, -fc * g32, g * g},
  };
  return 0.25 * m;
}

}  // namespace detail

inline DensityMatrix2Q closed_form_rho(const InitialState& initial, const CavityParams& params, double t) {
  params.validate();
  if (t < 0.0) throw std::invalid_argument("closed_form_rho: t must be >= 0");
  if (!params.quiet()) throw std::invalid_argument("closed_form_rho: closed forms assume quiet reservoirs");
  if (params.gamma1 != params.gamma2) throw std::invalid_argument("closed_form_rho: requires gamma1 == gamma2");

  const double gamma = params.gamma1;
  const double g = std::exp(-gamma * t);
  const double chi1 = params.chi11, chi2 = params.chi22, chi12 = params.chi12;
  const bool no_self = chi1 == 0.0 && chi2 == 0.0;

  if (auto* s = std::get_if<init::BellPsi>(&initial)) {
    const complex off = sign_value(s->sign) * g * std::exp(complex(0.0, (chi1 - chi2) * t));
    ComplexMatrix m(4);
    m(0, 0) = 2.0 * (1.0 - g);
    m(1, 1) = g;
    m(2, 2) = g;
    m(1, 2) = off;
    m(2, 1) = std::conj(off);
    return DensityMatrix2Q(0.5 * m);
  }
  if (auto* s = std::get_if<init::BellPhi>(&initial)) {
    const complex off = sign_value(s->sign) * g * std::exp(complex(0.0, (chi1 + 2.0 * chi12 + chi2) * t));
    ComplexMatrix m(4);
    m(0, 0) = 2.0 - 2.0 * g + g * g;
    m(1, 1) = (1.0 - g) * g;
    m(2, 2) = (1.0 - g) * g;
    m(3, 3) = g * g;
    m(0, 3) = off;
    m(3, 0) = std::conj(off);
    return DensityMatrix2Q(0.5 * m);
  }
  if (auto* s = std::get_if<init::WernerPsi>(&initial)) {
    const double p = s->p;
    const complex off = sign_value(s->sign) * 2.0 * g * p * std::exp(complex(0.0, (chi1 - chi2) * t));
    ComplexMatrix m(4);
    m(0, 0) = (2.0 - g) * (2.0 - g) - g * g * p;
    m(3, 3) = g * g * (1.0 - p);
    m(1, 1) = g * (2.0 - g * (1.0 - p));
    m(2, 2) = m(1, 1);
    m(1, 2) = off;
    m(2, 1) = std::conj(off);
    return DensityMatrix2Q(0.25 * m);
  }
  if (auto* s = std::get_if<init::WernerPhi>(&initial)) {
    const double p = s->p;
    const double xp = (1.0 + p) * g * g / 2.0;
    const complex f = g * std::exp(complex(0.0, (chi1 + 2.0 * chi12 + chi2) * t));
    ComplexMatrix m(4);
    m(0, 0) = 2.0 - 2.0 * g + xp;
    m(1, 1) = g - xp;
    m(2, 2) = g - xp;
    m(3, 3) = xp;
    m(0, 3) = sign_value(s->sign) * p * f;
    m(3, 0) = sign_value(s->sign) * p * std::conj(f);
    return DensityMatrix2Q(0.5 * m);
  }
  if (std::holds_alternative<init::BellLike>(initial) || std::holds_alternative<init::PlusPlus>(initial) ||
      std::holds_alternative<init::WernerLike>(initial)) {
    if (!no_self) throw std::invalid_argument("closed_form_rho: Bell-like families require chi11 = chi22 = 0");
    ComplexMatrix m = detail::bell_like_evolved(gamma, chi12, t, std::holds_alternative<init::PlusPlus>(initial));
    if (auto* s = std::get_if<init::WernerLike>(&initial)) {
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
          if (i != j) m(i, j) *= s->p;
    }
    return DensityMatrix2Q(std::move(m));
  }
  throw std::invalid_argument("closed_form_rho: no closed form for initial family '" + family_name(initial) + "'");
}

// ---------------------------------------------------------------------------
// Trajectories

enum class Engine { analytic, oracle, closed_form };

struct OracleSettings {
  std::size_t fock_dim = 2;
  double step = 0.0;  // <= 0: default_oracle_step
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix2Q> states;
  CavityParams params;
  std::string initial;
};

inline std::vector<double> uniform_grid(double t_max, std::size_t n_points) {
  if (n_points < 2) throw std::invalid_argument("time grid: n_points must be >= 2");
  if (!(t_max > 0.0)) throw std::invalid_argument("time grid: t_max must be > 0");
  std::vector<double> ts(n_points);
  for (std::size_t k = 0; k < n_points; ++k)
    ts[k] = t_max * static_cast<double>(k) / static_cast<double>(n_points - 1);
  return ts;
}

inline Trajectory trajectory(const InitialState& initial, const CavityParams& params, double t_max,
                             std::size_t n_points, Engine engine, const OracleSettings& oracle = {}) {
  params.validate();
  Trajectory out{uniform_grid(t_max, n_points), {}, params, family_name(initial)};
  out.states.reserve(n_points);
  const DensityMatrix2Q rho0 = initial_density(initial);

  switch (engine) {
    case Engine::analytic:
      for (double t : out.times) out.states.push_back(propagate(rho0, params, t));
      break;
    case Engine::closed_form:
      for (double t : out.times) out.states.push_back(closed_form_rho(initial, params, t));
      break;
    case Engine::oracle: {
      if (!params.quiet() && oracle.fock_dim < 4)
        throw std::invalid_argument("trajectory: thermal reservoirs require fock_dim >= 4");
      const LindbladIntegrator integrator(params, oracle.fock_dim, oracle.step);
      ComplexMatrix rho = embed_qubits(rho0.matrix(), oracle.fock_dim);
      double t_prev = 0.0;
      for (double t : out.times) {
        rho = integrator.advance(std::move(rho), t - t_prev);
        t_prev = t;
        out.states.push_back(qubit_density(rho, oracle.fock_dim, !params.quiet()));
      }
      break;
    }
  }
  return out;
}

}  // namespace kerrdeco
