#pragma once

#include <future>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "kerrdeco/cli/csv.hpp"
#include "kerrdeco/cli/scenario.hpp"
#include "kerrdeco/measures.hpp"

namespace kerrdeco::cli {

inline std::vector<std::string> measure_columns(const std::vector<Output>& outputs) {
  std::vector<std::string> names;
  for (Output o : outputs) {
    if (o != Output::matrix_elements) {
      names.emplace_back(output_name(o));
      continue;
    }
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const std::string ij = std::to_string(i) + std::to_string(j);
        names.push_back("rho" + ij + "_re");
        names.push_back("rho" + ij + "_im");
      }
  }
  return names;
}

inline void append_measures(std::vector<double>& row, const DensityMatrix2Q& rho, const std::vector<Output>& outputs) {
  for (Output o : outputs) {
    switch (o) {
      case Output::concurrence: row.push_back(concurrence(rho)); break;
      case Output::negativity: row.push_back(negativity(rho)); break;
      case Output::eof: row.push_back(eof(concurrence(rho))); break;
      case Output::log_negativity: row.push_back(log_negativity(negativity(rho))); break;
      case Output::matrix_elements:
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t j = 0; j < 4; ++j) {
            row.push_back(rho(i, j).real());
            row.push_back(rho(i, j).imag());
          }
        break;
    }
  }
}

// Rows only; `prefix` values are prepended to every row.
inline void write_trajectory_rows(std::ostream& os, const Scenario& s, const std::vector<double>& prefix = {}) {
  const Trajectory traj = trajectory(s.initial, s.params, s.t_max, s.n_points, s.engine, s.oracle);
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    std::vector<double> row = prefix;
    row.push_back(traj.times[k]);
    append_measures(row, traj.states[k], s.outputs);
    write_row(os, row);
  }
}

inline void run_simulate(const Scenario& s, std::ostream& os) {
  validate(s);
  std::vector<std::string> header{"t"};
  for (auto& name : measure_columns(s.outputs)) header.push_back(std::move(name));
  write_header(os, header);
  write_trajectory_rows(os, s);
}

enum class SweepParam { gamma, chi12, p };

inline SweepParam parse_sweep_param(const std::string& name) {
  if (name == "gamma") return SweepParam::gamma;
  if (name == "chi12") return SweepParam::chi12;
  if (name == "p") return SweepParam::p;
  throw ConfigError("sweep: unknown parameter '" + name + "' (expected gamma, chi12 or p)");
}

inline Scenario with_value(Scenario s, SweepParam param, double v) {
  switch (param) {
    case SweepParam::gamma:
      s.params.gamma1 = s.params.gamma2 = v;
      break;
    case SweepParam::chi12:
      s.params.chi12 = v;
      break;
    case SweepParam::p:
      if (v < 0.0 || v > 1.0) throw ConfigError("sweep: p must lie in [0, 1]");
      if (auto* w = std::get_if<init::WernerPsi>(&s.initial)) w->p = v;
      else if (auto* w = std::get_if<init::WernerPhi>(&s.initial)) w->p = v;
      else if (auto* w = std::get_if<init::WernerLike>(&s.initial)) w->p = v;
      else throw ConfigError("sweep: p requires a Werner initial family");
      break;
  }
  validate(s);
  return s;
}

// Long format: one block of rows per value, in input order. Blocks are
// computed concurrently and written sequentially.
inline void run_sweep(const Scenario& base, const std::string& param_name, const std::vector<double>& values,
                      std::ostream& os) {
  const SweepParam param = parse_sweep_param(param_name);
  std::vector<Scenario> scenarios;
  for (double v : values) scenarios.push_back(with_value(base, param, v));

  std::vector<std::string> header{param_name, "t"};
  for (auto& name : measure_columns(base.outputs)) header.push_back(std::move(name));
  write_header(os, header);

  std::vector<std::future<std::string>> blocks;
  for (std::size_t i = 0; i < scenarios.size(); ++i)
    blocks.push_back(std::async(std::launch::async, [&, i] {
      std::ostringstream block;
      write_trajectory_rows(block, scenarios[i], {values[i]});
      return block.str();
    }));
  for (auto& b : blocks) os << b.get();
}

}  // namespace kerrdeco::cli
