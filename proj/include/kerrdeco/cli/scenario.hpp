#pragma once

// JSON scenario documents. Schema (all keys optional, unknown keys rejected):
//
//   {
//     "initial":  {"family": "bell_like", "sign": "+", "p": 0.8,
//                  "d": [d1, d2, d3, d4], "amplitudes": [c00, c01, c10, c11],
//                  "matrix": [[...4 entries...], ...4 rows...]},
//     "params":   {"gamma": 4, "gamma1": 4, "gamma2": 4, "chi11": 0, "chi22": 0,
//                  "chi12": 20, "nbar1": 0, "nbar2": 0},
//     "t_max": 1.0, "n_points": 401,
//     "engine": "analytic" | "oracle" | "closed_form",
//     "fock_dim": 2, "step": 0,
//     "outputs": ["concurrence", "negativity", "eof", "log_negativity", "matrix_elements"]
//   }
//
// Complex entries are a number or a [re, im] pair. "gamma" sets both damping
// rates; "gamma1"/"gamma2" override it per mode.

#include <algorithm>
#include <array>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "kerrdeco/evolution.hpp"
#include "kerrdeco/states.hpp"

namespace kerrdeco::cli {

using nlohmann::json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Output { concurrence, negativity, eof, log_negativity, matrix_elements };

struct Scenario {
  InitialState initial = init::BellLike{};
  CavityParams params = CavityParams::symmetric(4.0, 20.0);
  double t_max = 1.0;
  std::size_t n_points = 401;
  Engine engine = Engine::analytic;
  OracleSettings oracle{};
  std::vector<Output> outputs{Output::concurrence, Output::negativity};
};

inline const char* output_name(Output o) {
  switch (o) {
    case Output::concurrence: return "concurrence";
    case Output::negativity: return "negativity";
    case Output::eof: return "eof";
    case Output::log_negativity: return "log_negativity";
    case Output::matrix_elements: return "matrix_elements";
  }
  return "";
}

inline const char* engine_name(Engine e) {
  switch (e) {
    case Engine::analytic: return "analytic";
    case Engine::oracle: return "oracle";
    case Engine::closed_form: return "closed_form";
  }
  return "";
}

namespace detail {

inline void reject_unknown(const json& obj, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& item : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; });
    if (!known) throw ConfigError(where + ": unknown key '" + item.key() + "'");
  }
}

inline double number(const json& v, const std::string& what) {
  if (!v.is_number()) throw ConfigError(what + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(what + ": must be finite");
  return d;
}

inline complex complex_value(const json& v, const std::string& what) {
  if (v.is_number()) return {number(v, what), 0.0};
  if (v.is_array() && v.size() == 2) return {number(v[0], what), number(v[1], what)};
  throw ConfigError(what + ": expected a number or a [re, im] pair");
}

inline std::array<complex, 4> complex4(const json& v, const std::string& what) {
  if (!v.is_array() || v.size() != 4) throw ConfigError(what + ": expected 4 entries");
  std::array<complex, 4> out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = complex_value(v[i], what);
  return out;
}

inline Sign sign_of(const json& obj) {
  if (!obj.contains("sign")) return Sign::plus;
  const auto& s = obj["sign"];
  if (s == "+" || s == "plus") return Sign::plus;
  if (s == "-" || s == "minus") return Sign::minus;
  throw ConfigError("initial.sign: expected \"+\" or \"-\"");
}

inline double p_of(const json& obj) {
  if (!obj.contains("p")) throw ConfigError("initial.p: required for Werner families");
  const double p = number(obj["p"], "initial.p");
  if (p < 0.0 || p > 1.0) throw ConfigError("initial.p: must lie in [0, 1]");
  return p;
}

inline InitialState parse_initial(const json& obj) {
  reject_unknown(obj, {"family", "sign", "p", "d", "amplitudes", "matrix"}, "initial");
  if (!obj.contains("family") || !obj["family"].is_string()) throw ConfigError("initial.family: required string");
  const std::string family = obj["family"];
  try {
    if (family == "bell_psi") return init::BellPsi{sign_of(obj)};
    if (family == "bell_phi") return init::BellPhi{sign_of(obj)};
    if (family == "bell_like") return init::BellLike{};
    if (family == "plus_plus") return init::PlusPlus{};
    if (family == "separable") {
      if (!obj.contains("d")) throw ConfigError("initial.d: required for separable");
      const auto d = complex4(obj["d"], "initial.d");
      separable(d[0], d[1], d[2], d[3]);  // validates normalization
      return init::Separable{d};
    }
    if (family == "werner_psi") return init::WernerPsi{sign_of(obj), p_of(obj)};
    if (family == "werner_phi") return init::WernerPhi{sign_of(obj), p_of(obj)};
    if (family == "werner_like") return init::WernerLike{p_of(obj)};
    if (family == "custom_pure") {
      if (!obj.contains("amplitudes")) throw ConfigError("initial.amplitudes: required for custom_pure");
      const auto a = complex4(obj["amplitudes"], "initial.amplitudes");
      return init::CustomPure{PureState2Q(a[0], a[1], a[2], a[3])};
    }
    if (family == "custom_mixed") {
      if (!obj.contains("matrix")) throw ConfigError("initial.matrix: required for custom_mixed");
      const auto& rows = obj["matrix"];
      if (!rows.is_array() || rows.size() != 4) throw ConfigError("initial.matrix: expected 4 rows");
      ComplexMatrix m(4);
      for (std::size_t i = 0; i < 4; ++i) {
        const auto row = complex4(rows[i], "initial.matrix");
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = row[j];
      }
      return init::CustomMixed{DensityMatrix2Q(m)};
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("initial: ") + e.what());
  }
  throw ConfigError("initial.family: unknown family '" + family + "'");
}

inline CavityParams parse_params(const json& obj, CavityParams base) {
  reject_unknown(obj, {"gamma", "gamma1", "gamma2", "chi11", "chi22", "chi12", "nbar1", "nbar2"}, "params");
  if (obj.contains("gamma")) base.gamma1 = base.gamma2 = number(obj["gamma"], "params.gamma");
  auto set = [&](const char* key, double& field) {
    if (obj.contains(key)) field = number(obj[key], std::string("params.") + key);
  };
  set("gamma1", base.gamma1);
  set("gamma2", base.gamma2);
  set("chi11", base.chi11);
  set("chi22", base.chi22);
  set("chi12", base.chi12);
  set("nbar1", base.nbar1);
  set("nbar2", base.nbar2);
  return base;
}

}  // namespace detail

// Throws ConfigError when the engine cannot run this initial state / parameter set.
inline void validate(const Scenario& s) {
  if (s.n_points < 2) throw ConfigError("n_points must be >= 2");
  if (!(s.t_max > 0.0) || !std::isfinite(s.t_max)) throw ConfigError("t_max must be > 0");
  if (s.outputs.empty()) throw ConfigError("outputs: at least one output is required");
  try {
    s.params.validate();
    const DensityMatrix2Q rho0 = initial_density(s.initial);
    switch (s.engine) {
      case Engine::analytic:
        propagate(rho0, s.params, 0.0);
        break;
      case Engine::closed_form:
        closed_form_rho(s.initial, s.params, 0.0);
        break;
      case Engine::oracle:
        if (!s.params.quiet() && s.oracle.fock_dim < 4)
          throw std::invalid_argument("thermal reservoirs require fock_dim >= 4");
        LindbladIntegrator(s.params, s.oracle.fock_dim, s.oracle.step);
        break;
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("engine '") + engine_name(s.engine) + "': " + e.what());
  }
}

inline Scenario parse_scenario(const json& doc) {
  detail::reject_unknown(doc, {"initial", "params", "t_max", "n_points", "engine", "fock_dim", "step", "outputs"},
                         "scenario");
  Scenario s;
  if (doc.contains("initial")) s.initial = detail::parse_initial(doc["initial"]);
  if (doc.contains("params")) s.params = detail::parse_params(doc["params"], s.params);
  if (doc.contains("t_max")) s.t_max = detail::number(doc["t_max"], "t_max");
  if (doc.contains("n_points")) {
    if (!doc["n_points"].is_number_integer() || doc["n_points"].get<long long>() < 2)
      throw ConfigError("n_points: expected an integer >= 2");
    s.n_points = doc["n_points"].get<std::size_t>();
  }
  if (doc.contains("engine")) {
    const auto& e = doc["engine"];
    if (e == "analytic") s.engine = Engine::analytic;
    else if (e == "oracle") s.engine = Engine::oracle;
    else if (e == "closed_form") s.engine = Engine::closed_form;
    else throw ConfigError("engine: expected analytic, oracle or closed_form");
  }
  if (doc.contains("fock_dim")) {
    if (!doc["fock_dim"].is_number_integer() || doc["fock_dim"].get<long long>() < 2)
      throw ConfigError("fock_dim: expected an integer >= 2");
    s.oracle.fock_dim = doc["fock_dim"].get<std::size_t>();
  }
  if (doc.contains("step")) s.oracle.step = detail::number(doc["step"], "step");
  if (doc.contains("outputs")) {
    const auto& outs = doc["outputs"];
    if (!outs.is_array()) throw ConfigError("outputs: expected an array");
    s.outputs.clear();
    std::set<std::string> seen;
    for (const auto& o : outs) {
      if (!o.is_string()) throw ConfigError("outputs: entries must be strings");
      const std::string name = o;
      if (!seen.insert(name).second) throw ConfigError("outputs: duplicate '" + name + "'");
      if (name == "concurrence") s.outputs.push_back(Output::concurrence);
      else if (name == "negativity") s.outputs.push_back(Output::negativity);
      else if (name == "eof") s.outputs.push_back(Output::eof);
      else if (name == "log_negativity") s.outputs.push_back(Output::log_negativity);
      else if (name == "matrix_elements") s.outputs.push_back(Output::matrix_elements);
      else throw ConfigError("outputs: unknown output '" + name + "'");
    }
  }
  validate(s);
  return s;
}

inline Scenario parse_scenario_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario: invalid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

}  // namespace kerrdeco::cli
