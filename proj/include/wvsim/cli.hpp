#pragma once

#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wvsim/config.hpp"
#include "wvsim/ensemble.hpp"
#include "wvsim/errors.hpp"
#include "wvsim/qcore.hpp"
#include "wvsim/spontaneous.hpp"
#include "wvsim/stimulated.hpp"
#include "wvsim/table.hpp"
#include "wvsim/tsvf.hpp"
#include "wvsim/version.hpp"

namespace wvsim {
namespace cli {

using config::Experiment;
using config::OutFormat;
using config::RunConfig;

inline std::string arm_label(std::size_t i, std::size_t n) {
  if (n == 2) return i == 0 ? "R" : "L";
  return std::to_string(i);
}

inline tsvf::TwoStateVector make_tsv(const RunConfig& cfg) {
  std::vector<cplx> pre = cfg.pre_amps;
  if (pre.empty()) pre = {cfg.alpha, -cfg.beta};
  std::vector<cplx> post = cfg.post_amps;
  if (post.empty()) post.assign(pre.size(), cplx{1.0, 0.0});
  return tsvf::TwoStateVector(qcore::PureState(std::move(pre)),
                              qcore::PureState(std::move(post)));
}

// Arm positions for the emission experiment: adjacent arms 2d apart,
// centered on the axis, ordered from +x down so two arms sit at (+d, -d).
inline std::vector<double> arm_positions(std::size_t n, double d) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = (0.5 * static_cast<double>(n - 1) - static_cast<double>(i)) * 2.0 * d;
  return out;
}

inline std::string join_complex(const std::vector<cplx>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += config::format_complex(v[i]);
  }
  return out;
}

inline std::string join_real(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += table::format_real(v[i]);
  }
  return out;
}

// Every output file carries the fully resolved config, so a result is
// reproducible from its own header.
inline void echo_config(table::ResultTable& t, const RunConfig& cfg) {
  t.add_meta("schema_version", "1");
  t.add_meta("version", kVersion);
  t.add_meta("experiment", config::experiment_name(*cfg.experiment));
  if (cfg.pre_amps.empty()) {
    t.add_meta("alpha", config::format_complex(cfg.alpha));
    t.add_meta("beta", config::format_complex(cfg.beta));
  } else {
    t.add_meta("pre", join_complex(cfg.pre_amps));
  }
  if (!cfg.post_amps.empty()) t.add_meta("post", join_complex(cfg.post_amps));
  t.add_meta("q0", table::format_real(cfg.q0));
  t.add_meta("excitation", cfg.excitation ? "true" : "false");
  t.add_meta("d", table::format_real(cfg.d));
  t.add_meta("lambda", table::format_real(cfg.lambda));
  t.add_meta("waist_factor", table::format_real(cfg.waist_factor));
  t.add_meta("trials", std::to_string(cfg.trials));
  t.add_meta("seed", std::to_string(cfg.seed));
  if (cfg.experiment == Experiment::sweep) {
    t.add_meta("sweep_axis", cfg.sweep_axis);
    t.add_meta("sweep_values", join_real(cfg.sweep_values));
    t.add_meta("sweep_target", config::experiment_name(config::resolve_sweep_target(cfg)));
  }
}

inline table::ResultTable run_weak_values(const RunConfig& cfg) {
  const auto tsv = make_tsv(cfg);
  const auto weak = tsvf::arm_weak_values(tsv);
  table::ResultTable t({{"operator", table::ColType::text},
                        {"re", table::ColType::real},
                        {"im", table::ColType::real}});
  echo_config(t, cfg);
  t.add_meta("postselect_probability",
             table::format_real(tsvf::postselect_probability(tsv)));
  t.add_meta("counting_rule_applies",
             tsvf::alpha_beta_rule_applies(cfg.alpha, cfg.beta) && cfg.pre_amps.empty()
                 ? "true"
                 : "false");
  for (std::size_t a = 0; a < weak.size(); ++a)
    t.add_row({std::string("P_") + arm_label(a, weak.size()), weak[a].real(),
               weak[a].imag()});
  return t;
}

inline table::ResultTable run_stimulated(const RunConfig& cfg) {
  const stimulated::StimulatedConfig scfg(make_tsv(cfg), cfg.q0, cfg.excitation);
  const auto rows = stimulated::report(scfg);
  table::ResultTable t({{"arm", table::ColType::text},
                        {"excess_weak", table::ColType::real},
                        {"excess_exact", table::ColType::real},
                        {"excess_paper_marginal", table::ColType::real},
                        {"abs_error", table::ColType::real}});
  echo_config(t, cfg);
  t.add_meta("success_probability_exact",
             table::format_real(rows.front().success_probability_exact));
  t.add_meta("success_probability_naive",
             table::format_real(rows.front().success_probability_naive));
  for (const auto& r : rows)
    t.add_row({arm_label(r.arm, rows.size()), r.excess_weak, r.excess_exact,
               r.excess_paper_marginal, std::abs(r.excess_exact - r.excess_weak)});
  return t;
}

inline table::ResultTable run_spontaneous(const RunConfig& cfg) {
  auto tsv = make_tsv(cfg);
  const std::size_t dim = tsv.dim();
  const spontaneous::EmissionConfig ecfg(std::move(tsv), arm_positions(dim, cfg.d),
                                         cfg.lambda, cfg.waist_factor);
  const auto r = spontaneous::pattern_report(ecfg);
  table::ResultTable t({{"peak_x", table::ColType::real},
                        {"phantom_prediction", table::ColType::real},
                        {"abs_error", table::ColType::real},
                        {"mean_x", table::ColType::real},
                        {"mean_p", table::ColType::real},
                        {"predicted_mean_p", table::ColType::real},
                        {"long_wavelength", table::ColType::integer}});
  echo_config(t, cfg);
  t.add_meta("postselect_probability",
             table::format_real(tsvf::postselect_probability(ecfg.tsv)));
  t.add_row({r.peak_x, r.phantom_prediction, std::abs(r.peak_x - r.phantom_prediction),
             r.mean_x, r.mean_p, r.predicted_mean_p,
             static_cast<long long>(r.long_wavelength ? 1 : 0)});
  return t;
}

inline table::ResultTable run_ensemble(const RunConfig& cfg) {
  const stimulated::StimulatedConfig scfg(make_tsv(cfg), cfg.q0, cfg.excitation);
  const auto stats = ensemble::run_ensemble(scfg, cfg.trials, cfg.seed);
  table::ResultTable t({{"arm", table::ColType::text},
                        {"mean_excess", table::ColType::real},
                        {"std_err", table::ColType::real},
                        {"excess_exact", table::ColType::real},
                        {"abs_error", table::ColType::real}});
  echo_config(t, cfg);
  t.add_meta("n_trials", std::to_string(stats.n_trials));
  t.add_meta("n_accepted", std::to_string(stats.n_accepted));
  t.add_meta("acceptance_rate", table::format_real(stats.acceptance_rate));
  t.add_meta("success_probability_exact",
             table::format_real(stimulated::success_probability_exact(scfg)));
  const std::size_t n = stats.mean_excess.size();
  for (std::size_t a = 0; a < n; ++a) {
    const double exact = stimulated::exact_marginal_moments(scfg, a).excess;
    t.add_row({arm_label(a, n), stats.mean_excess[a], stats.std_err[a], exact,
               std::abs(stats.mean_excess[a] - exact)});
  }
  return t;
}

inline table::ResultTable run_sweep(const RunConfig& cfg) {
  const Experiment target = config::resolve_sweep_target(cfg);
  const bool stim = target == Experiment::stimulated;

  RunConfig probe = cfg;
  probe.experiment = target;
  const std::size_t n_arms = make_tsv(cfg).dim();

  std::vector<table::Column> cols{{"value", table::ColType::real}};
  if (stim) {
    for (std::size_t a = 0; a < n_arms; ++a)
      cols.push_back({"excess_exact_" + arm_label(a, n_arms), table::ColType::real});
    cols.push_back({"abs_error", table::ColType::real});
    cols.push_back({"success_probability", table::ColType::real});
  } else {
    cols.push_back({"peak_x", table::ColType::real});
    cols.push_back({"phantom_prediction", table::ColType::real});
    cols.push_back({"abs_error", table::ColType::real});
    cols.push_back({"postselect_probability", table::ColType::real});
  }
  cols.push_back({"status", table::ColType::text});

  table::ResultTable t(std::move(cols));
  echo_config(t, cfg);

  for (double v : cfg.sweep_values) {
    RunConfig row_cfg = cfg;
    row_cfg.experiment = target;
    if (cfg.sweep_axis == "q0") row_cfg.q0 = v;
    else if (cfg.sweep_axis == "lambda") row_cfg.lambda = v;
    else if (cfg.sweep_axis == "d") row_cfg.d = v;
    else {
      // alpha axis walks the alpha = beta + 1 family
      row_cfg.alpha = cplx{v, 0.0};
      row_cfg.beta = cplx{v - 1.0, 0.0};
      row_cfg.pre_amps.clear();
    }
    std::vector<table::Cell> row{v};
    try {
      if (stim) {
        const stimulated::StimulatedConfig scfg(make_tsv(row_cfg), row_cfg.q0,
                                                row_cfg.excitation);
        const auto rep = stimulated::report(scfg);
        double err = 0.0;
        for (const auto& r : rep) err = std::max(err, std::abs(r.excess_exact - r.excess_weak));
        for (const auto& r : rep) row.emplace_back(r.excess_exact);
        row.emplace_back(err);
        row.emplace_back(rep.front().success_probability_exact);
      } else {
        const auto tsv = make_tsv(row_cfg);
        const spontaneous::EmissionConfig ecfg(tsv, arm_positions(tsv.dim(), row_cfg.d),
                                               row_cfg.lambda, row_cfg.waist_factor);
        const auto pattern = spontaneous::emission_pattern(ecfg);
        const double peak = spontaneous::peak_position(pattern, spontaneous::search_window(ecfg));
        const double phantom = spontaneous::phantom_prediction(ecfg);
        row.emplace_back(peak);
        row.emplace_back(phantom);
        row.emplace_back(std::abs(peak - phantom));
        row.emplace_back(tsvf::postselect_probability(ecfg.tsv));
      }
      row.emplace_back(std::string("ok"));
    } catch (const Error& e) {
      row.resize(1);
      for (std::size_t i = 1; i + 1 < t.columns().size(); ++i) {
        if (t.columns()[i].type == table::ColType::real) row.emplace_back(0.0);
        else row.emplace_back(static_cast<long long>(0));
      }
      row.emplace_back(std::string(e.what()));
    }
    t.add_row(std::move(row));
  }
  return t;
}

inline table::ResultTable run(const RunConfig& cfg) {
  config::validate(cfg);
  switch (*cfg.experiment) {
    case Experiment::weak_values: return run_weak_values(cfg);
    case Experiment::stimulated: return run_stimulated(cfg);
    case Experiment::spontaneous: return run_spontaneous(cfg);
    case Experiment::ensemble: return run_ensemble(cfg);
    case Experiment::sweep: return run_sweep(cfg);
  }
  throw ValidationError("experiment", "unhandled experiment");
}

// Aligned text rendering for the terminal; files get the lossless formats.
inline std::string render_text(const table::ResultTable& t) {
  std::ostringstream out;
  for (const auto& [k, v] : t.meta()) out << k << " = " << v << "\n";
  const auto fmt_cell = [](const table::Cell& c) -> std::string {
    switch (c.index()) {
      case 0: return std::get<std::string>(c);
      case 1: return std::to_string(std::get<long long>(c));
      default: {
        std::ostringstream ss;
        ss << std::setprecision(10) << std::get<double>(c);
        return ss.str();
      }
    }
  };
  std::vector<std::size_t> w(t.columns().size());
  for (std::size_t i = 0; i < t.columns().size(); ++i) w[i] = t.columns()[i].name.size();
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : t.rows()) {
    std::vector<std::string> r;
    for (std::size_t i = 0; i < row.size(); ++i) {
      r.push_back(fmt_cell(row[i]));
      w[i] = std::max(w[i], r.back().size());
    }
    cells.push_back(std::move(r));
  }
  out << "\n";
  for (std::size_t i = 0; i < t.columns().size(); ++i)
    out << std::left << std::setw(static_cast<int>(w[i]) + 2) << t.columns()[i].name;
  out << "\n";
  for (const auto& r : cells) {
    for (std::size_t i = 0; i < r.size(); ++i)
      out << std::left << std::setw(static_cast<int>(w[i]) + 2) << r[i];
    out << "\n";
  }
  return out.str();
}

inline std::string serialize(const table::ResultTable& t, OutFormat f) {
  return f == OutFormat::csv ? table::to_csv(t) : table::to_json(t);
}

}  // namespace cli
}  // namespace wvsim
