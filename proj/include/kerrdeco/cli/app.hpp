#pragma once

// Command-line front end. Exit codes: 0 success, 1 usage/config error,
// 2 verification failure.
//
//   kerrdeco simulate --scenario FILE [--out FILE]
//   kerrdeco figure fig1|fig2|fig3|fig4 [--p LIST] [--n-points N] [--out FILE]
//   kerrdeco sweep gamma|chi12|p --values LIST [--scenario FILE] [--out FILE]
//   kerrdeco verify [fast|full] [--json] [--out FILE]
//
// The mode flags --figure ID, --sweep PARAM and --verify LEVEL are accepted
// at top level as well; with none of them, --scenario FILE runs simulate.

#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kerrdeco/cli/csv.hpp"
#include "kerrdeco/cli/figures.hpp"
#include "kerrdeco/cli/scenario.hpp"
#include "kerrdeco/cli/simulate.hpp"
#include "kerrdeco/cli/verify.hpp"

namespace kerrdeco::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitVerifyFailed = 2;

inline Scenario load_scenario(const std::string& path) {
  if (path.empty()) return Scenario{};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open scenario file '" + path + "'");
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_scenario_text(text);
}

inline void deliver(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("cannot open output file '" + out_path + "'");
  file << text;
  if (!file) throw ConfigError("failed writing '" + out_path + "'");
}

struct CliState {
  std::string scenario_path;
  std::string out_path;
  std::string figure_id;
  std::string sweep_param;
  std::string values;
  bool values_given = false;
  std::string verify_level;
  bool json = false;
  std::string p_list;
  FigureOptions figure;
  double kerr_phase_sign = 1.0;
};

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CliState st;
  CLI::App app{"Entanglement dynamics of two qubits in damped Kerr-coupled cavities"};
  app.set_version_flag("--version", "kerrdeco 0.1.0");

  auto add_out = [&](CLI::App* cmd) { cmd->add_option("--out", st.out_path, "Write output to FILE instead of stdout"); };
  auto add_scenario = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", st.scenario_path, "JSON scenario file")->check(CLI::ExistingFile);
  };
  auto add_figure_options = [&](CLI::App* cmd) {
    cmd->add_option("--p", st.p_list, "Comma-separated Werner parameters (fig3, fig4)");
    cmd->add_option("--n-points", st.figure.n_points, "Number of time points")->check(CLI::Range(2, 100000000));
    cmd->add_option("--t-max", st.figure.t_max, "Final time in microseconds");
    cmd->add_option("--gamma", st.figure.gamma, "Damping constant, rad/us");
    cmd->add_option("--chi12", st.figure.chi12, "Cross-Kerr constant, rad/us");
  };

  // top-level mode flags
  add_scenario(&app);
  add_out(&app);
  app.add_option("--figure", st.figure_id, "Figure id: fig1, fig2, fig3 or fig4");
  app.add_option("--sweep", st.sweep_param, "Sweep parameter: gamma, chi12 or p");
  auto* values_opt = app.add_option("--values", st.values, "Comma-separated sweep values");
  app.add_option("--verify", st.verify_level, "Verification level: fast or full");
  app.add_flag("--json", st.json, "Emit the verification verdict as JSON");
  add_figure_options(&app);

  auto* simulate = app.add_subcommand("simulate", "Run one scenario and write a CSV trajectory");
  add_scenario(simulate);
  add_out(simulate);

  auto* figure = app.add_subcommand("figure", "Write the data of one figure as CSV");
  figure->add_option("id", st.figure_id, "fig1, fig2, fig3 or fig4");
  figure->add_option("--figure", st.figure_id, "Same as the positional id");
  add_figure_options(figure);
  add_out(figure);

  auto* sweep = app.add_subcommand("sweep", "Run a scenario over a list of parameter values");
  sweep->add_option("param", st.sweep_param, "gamma, chi12 or p");
  sweep->add_option("--sweep", st.sweep_param, "Same as the positional parameter");
  auto* sweep_values = sweep->add_option("--values", st.values, "Comma-separated values");
  add_scenario(sweep);
  add_out(sweep);

  auto* verify = app.add_subcommand("verify", "Run the verification suite");
  verify->add_option("level", st.verify_level, "fast (default) or full");
  verify->add_option("--verify", st.verify_level, "Same as the positional level");
  verify->add_flag("--json", st.json, "Emit a JSON verdict");
  verify->add_option("--kerr-phase-sign", st.kerr_phase_sign)->group("");
  add_out(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  st.values_given = values_opt->count() > 0 || sweep_values->count() > 0;

  enum class Mode { simulate, figure, sweep, verify } mode;
  if (simulate->parsed()) mode = Mode::simulate;
  else if (figure->parsed()) mode = Mode::figure;
  else if (sweep->parsed()) mode = Mode::sweep;
  else if (verify->parsed()) mode = Mode::verify;
  else {
    const int modes = !st.figure_id.empty() + !st.sweep_param.empty() + !st.verify_level.empty();
    if (modes > 1) {
      err << "error: --figure, --sweep and --verify are mutually exclusive\n";
      return kExitUsage;
    }
    if (!st.figure_id.empty()) mode = Mode::figure;
    else if (!st.sweep_param.empty()) mode = Mode::sweep;
    else if (!st.verify_level.empty()) mode = Mode::verify;
    else if (!st.scenario_path.empty()) mode = Mode::simulate;
    else {
      err << app.help();
      return kExitUsage;
    }
  }

  try {
    std::ostringstream buf;
    switch (mode) {
      case Mode::simulate:
        if (st.scenario_path.empty()) throw ConfigError("simulate: --scenario FILE is required");
        run_simulate(load_scenario(st.scenario_path), buf);
        break;
      case Mode::figure: {
        if (st.figure_id.empty()) throw ConfigError("figure: an id is required (fig1, fig2, fig3 or fig4)");
        const FigureId id = parse_figure_id(st.figure_id);
        if (!st.p_list.empty()) {
          if (id == FigureId::fig1 || id == FigureId::fig2) throw ConfigError("figure: --p applies to fig3 and fig4");
          st.figure.p_values = parse_number_list(st.p_list);
        }
        run_figure(st.figure_id, st.figure, buf);
        break;
      }
      case Mode::sweep:
        if (st.sweep_param.empty()) throw ConfigError("sweep: a parameter is required (gamma, chi12 or p)");
        if (!st.values_given) throw ConfigError("sweep: --values LIST is required");
        run_sweep(load_scenario(st.scenario_path), st.sweep_param, parse_number_list(st.values), buf);
        break;
      case Mode::verify: {
        const VerifyLevel level = parse_verify_level(st.verify_level.empty() ? "fast" : st.verify_level);
        VerifyOptions opt;
        opt.propagator.kerr_phase_sign = st.kerr_phase_sign;
        const VerifyReport rep = run_verify(level, opt);
        if (st.json) write_verify_json(rep, buf);
        else write_verify_text(rep, buf);
        deliver(buf.str(), st.out_path, out);
        if (rep.passed()) return kExitOk;
        for (const auto& c : rep.checks)
          if (!c.passed) err << "verification failed: " << c.id << ": " << c.detail << '\n';
        return kExitVerifyFailed;
      }
    }
    deliver(buf.str(), st.out_path, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace kerrdeco::cli
