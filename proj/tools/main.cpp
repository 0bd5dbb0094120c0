#include "cli.hpp"

#include <cohpoly/errors.hpp>
#include <cohpoly/measures.hpp>
#include <cohpoly/sequence.hpp>

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace cohpoly;
  CLI::App app{"Coherent-state orthogonal polynomial toolkit"};
  std::string config_path;
  cli::Overrides o;
  bool list_families = false, list_measures = false, show_version = false;
  app.add_option("config", config_path, "YAML run configuration");
  app.add_option("--command", o.command, "Override run.command");
  app.add_option("--n-max", o.n_max, "Override run.n_max");
  app.add_option("--tolerance", o.tolerance, "Override run.tolerance");
  app.add_option("--output-dir", o.output_dir, "Override run.output_dir");
  app.add_option("--seed", o.seed, "Override run.seed");
  app.add_option("--measure", o.measure, "Override measure.name");
  app.add_flag("--list-families", list_families, "Print the known sequence families");
  app.add_flag("--list-measures", list_measures, "Print the known measures");
  app.add_flag("--version", show_version, "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(cli::ExitCode::ConfigError);
  }

  if (show_version) {
    std::cout << "cohpoly " << cli::version() << '\n';
    return 0;
  }
  if (list_families || list_measures) {
    if (list_families)
      for (auto f : family_names()) std::cout << f << '\n';
    if (list_measures)
      for (const auto& m : measure_names()) std::cout << m << '\n';
    return 0;
  }
  if (config_path.empty()) {
    std::cerr << "cohpoly: a config file is required (see --help)\n";
    return static_cast<int>(cli::ExitCode::ConfigError);
  }

  try {
    cli::RunConfig config = cli::load_config(config_path);
    cli::apply_overrides(config, o);
    cli::validate(config);
    return static_cast<int>(cli::run(config, std::cout));
  } catch (const ConfigError& e) {
    std::cerr << "cohpoly: " << e.what() << '\n';
    return static_cast<int>(cli::ExitCode::ConfigError);
  } catch (const std::exception& e) {
    std::cerr << "cohpoly: " << e.what() << '\n';
    return static_cast<int>(cli::ExitCode::ConfigError);
  }
}
