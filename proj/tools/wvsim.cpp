#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wvsim/cli.hpp"

namespace {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const wvsim::ParseError*>(&e)) return 2;
  if (dynamic_cast<const wvsim::ValidationError*>(&e)) return 2;
  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "wvsim: exact simulator for pre/post-selected interferometer experiments\n"
      "(anomalous weak values, conditional pointer states, phantom emission)"};

  std::string config_path, experiment, alpha, beta, pre, post, q0, d, lambda, waist,
      trials, seed, out, format, sweep_axis, sweep_values, sweep_target;
  bool excitation = false;

  app.add_option("--config", config_path, "config file (schema_version = 1)");
  app.add_option("--experiment", experiment,
                 "weak-values | stimulated | spontaneous | ensemble | sweep");
  app.add_option("--alpha", alpha, "preparation amplitude alpha (complex, e.g. 4 or 4i)");
  app.add_option("--beta", beta, "preparation amplitude beta (complex)");
  app.add_option("--pre", pre, "explicit pre-selection amplitudes, comma separated");
  app.add_option("--post", post,
                 "post-selection amplitudes, comma separated (default uniform)");
  app.add_option("--q0", q0, "laser pointer center per arm");
  app.add_option("--d", d, "half-separation of adjacent arms");
  app.add_option("--lambda", lambda, "emission wavelength scale");
  app.add_option("--waist-factor", waist, "emission profile width in units of lambda");
  app.add_option("--trials", trials, "ensemble size");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--out", out, "output file path");
  app.add_option("--format", format, "csv | json");
  app.add_option("--sweep-axis", sweep_axis, "q0 | lambda | d | alpha");
  app.add_option("--sweep-values", sweep_values, "sweep values, comma separated");
  app.add_option("--sweep-target", sweep_target,
                 "experiment the sweep drives (default inferred from axis)");
  app.add_flag("--excitation", excitation,
               "ground-state atom: absorption instead of emission");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    wvsim::config::RunConfig cfg;
    if (!config_path.empty())
      cfg = wvsim::config::parse_config_text(wvsim::table::read_text_file(config_path));

    const auto override_key = [&](const char* flag, const char* key, const std::string& v) {
      if (app.count(flag)) wvsim::config::apply_key(cfg, key, v, 0);
    };
    override_key("--experiment", "run.experiment", experiment);
    override_key("--alpha", "selection.alpha", alpha);
    override_key("--beta", "selection.beta", beta);
    override_key("--pre", "selection.pre", pre);
    override_key("--post", "selection.post", post);
    override_key("--q0", "stimulated.q0", q0);
    override_key("--d", "spontaneous.d", d);
    override_key("--lambda", "spontaneous.lambda", lambda);
    override_key("--waist-factor", "spontaneous.waist_factor", waist);
    override_key("--trials", "ensemble.trials", trials);
    override_key("--seed", "ensemble.seed", seed);
    override_key("--out", "output.path", out);
    override_key("--format", "output.format", format);
    override_key("--sweep-axis", "sweep.axis", sweep_axis);
    override_key("--sweep-values", "sweep.values", sweep_values);
    override_key("--sweep-target", "sweep.target", sweep_target);
    if (excitation) wvsim::config::apply_key(cfg, "stimulated.excitation", "true", 0);

    const auto result = wvsim::cli::run(cfg);
    std::cout << wvsim::cli::render_text(result);
    if (!cfg.output_path.empty()) {
      wvsim::table::write_text_file(cfg.output_path,
                                    wvsim::cli::serialize(result, cfg.format));
      std::cerr << "wrote " << cfg.output_path << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
