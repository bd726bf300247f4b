#pragma once

// Figure data. Each figure has five curves over t:
//   a: psi-type Bell/Werner state   b: phi-type Bell/Werner state
//   c: Bell-like/Werner-like state with chi12   d: the same with chi12 = 0
//   e: envelope of c
// fig1/fig3 plot concurrence, fig2/fig4 negativity. fig3/fig4 repeat the
// curves for each Werner parameter p (leading p column).

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "kerrdeco/analytics.hpp"
#include "kerrdeco/cli/csv.hpp"
#include "kerrdeco/cli/scenario.hpp"

namespace kerrdeco::cli {

struct FigureOptions {
  double gamma = 4.0;
  double chi12 = 20.0;
  double t_max = 1.0;
  std::size_t n_points = 401;
  std::vector<double> p_values{0.4, 0.6, 0.8, 1.0};  // fig3, fig4 only
};

enum class FigureId { fig1, fig2, fig3, fig4 };

inline FigureId parse_figure_id(const std::string& id) {
  if (id == "fig1") return FigureId::fig1;
  if (id == "fig2") return FigureId::fig2;
  if (id == "fig3") return FigureId::fig3;
  if (id == "fig4") return FigureId::fig4;
  throw ConfigError("figure: unknown id '" + id + "' (expected fig1, fig2, fig3 or fig4)");
}

struct FigureCurves {
  std::vector<double> t, a, b, c, d, e;
};

inline FigureCurves figure_curves(FigureId id, const FigureOptions& opt, std::optional<double> p = std::nullopt) {
  const bool use_concurrence = id == FigureId::fig1 || id == FigureId::fig3;
  const double gamma = opt.gamma;
  const auto coupled = CavityParams::symmetric(gamma, opt.chi12);
  const auto uncoupled = CavityParams::symmetric(gamma, 0.0);
  const InitialState like = p ? InitialState{init::WernerLike{*p}} : InitialState{init::BellLike{}};
  auto measure = [&](const DensityMatrix2Q& rho) { return use_concurrence ? concurrence(rho) : negativity(rho); };
  auto pick = [&](const MeasurePair& m) { return use_concurrence ? m.concurrence : m.negativity; };

  FigureCurves out;
  out.t = uniform_grid(opt.t_max, opt.n_points);
  for (double t : out.t) {
    if (p) {
      out.a.push_back(pick(werner_psi_curves(gamma, *p, t)));
      out.b.push_back(pick(werner_phi_curves(gamma, *p, t)));
    } else {
      out.a.push_back(pick(bell_psi_curves(gamma, t)));
      out.b.push_back(pick(bell_phi_curves(gamma, t)));
    }
    out.c.push_back(measure(closed_form_rho(like, coupled, t)));
    out.d.push_back(measure(closed_form_rho(like, uncoupled, t)));
    switch (id) {
      case FigureId::fig1: out.e.push_back(concurrence_envelope(gamma, t)); break;
      case FigureId::fig2: out.e.push_back(negativity_envelope(gamma, t)); break;
      case FigureId::fig3: out.e.push_back(werner_concurrence_envelope(gamma, *p, t)); break;
      case FigureId::fig4: break;
    }
  }
  if (id == FigureId::fig4) {
    // no closed form: interpolate the local maxima of curve c
    std::vector<CurvePoint> curve;
    for (std::size_t k = 0; k < out.t.size(); ++k) curve.push_back({out.t[k], out.c[k]});
    const auto env = numeric_envelope(curve);
    for (double t : out.t) out.e.push_back(interpolate(env, t));
  }
  return out;
}

inline void run_figure(const std::string& id_text, const FigureOptions& opt, std::ostream& os) {
  const FigureId id = parse_figure_id(id_text);
  if (opt.n_points < 2) throw ConfigError("figure: n_points must be >= 2");
  if (!(opt.t_max > 0.0)) throw ConfigError("figure: t_max must be > 0");
  const bool werner_panels = id == FigureId::fig3 || id == FigureId::fig4;
  for (double p : opt.p_values)
    if (p < 0.0 || p > 1.0) throw ConfigError("figure: p must lie in [0, 1]");

  std::vector<std::string> header{"t", "curve_a", "curve_b", "curve_c", "curve_d", "curve_e"};
  if (werner_panels) header.insert(header.begin(), "p");
  write_header(os, header);

  auto emit = [&](const FigureCurves& c, std::optional<double> p) {
    for (std::size_t k = 0; k < c.t.size(); ++k) {
      std::vector<double> row;
      if (p) row.push_back(*p);
      for (double v : {c.t[k], c.a[k], c.b[k], c.c[k], c.d[k], c.e[k]}) row.push_back(v);
      write_row(os, row);
    }
  };
  try {
    if (werner_panels) {
      for (double p : opt.p_values) emit(figure_curves(id, opt, p), p);
    } else {
      emit(figure_curves(id, opt), std::nullopt);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("figure: ") + e.what());
  }
}

}  // namespace kerrdeco::cli
