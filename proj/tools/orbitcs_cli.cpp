#include "orbitcs/config.hpp"
#include "orbitcs/experiment.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::string out;
  bool no_timestamp = false;
};

void add_common(CLI::App* sub, CommonFlags& flags) {
  sub->add_option("--config", flags.config_path, "Experiment configuration (INI)")->check(CLI::ExistingFile);
  sub->add_option("--seed", flags.seed, "Master seed, overrides [experiment] seed");
  sub->add_option("--out", flags.out, "CSV output path (default: [output] path, else stdout)");
  sub->add_flag("--no-timestamp", flags.no_timestamp, "Omit the timestamp line and runtime values");
  sub->add_option("--threads", flags.threads, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Group-orbit compressed sensing experiments"};
  app.require_subcommand(1);
  CommonFlags flags;
  std::optional<int> cx_n, cx_s;
  std::optional<std::string> cx_case;

  const char* names[][2] = {{"verify", "Run the invariant suite for a configured group and representation"},
                            {"constant", "Tabulate orbit-column constants"},
                            {"rip", "Restricted isometry constants by exhaustive enumeration"},
                            {"counterexample", "Null-space constructions where fixed sampling fails"},
                            {"phase-transition", "Monte Carlo recovery over an (s, m) grid"},
                            {"bound", "Evaluate the measurement-count formulas"}};
  for (const auto& entry : names) {
    CLI::App* sub = app.add_subcommand(entry[0], entry[1]);
    add_common(sub, flags);
    if (std::string(entry[0]) == "counterexample") {
      sub->add_option("--n", cx_n, "Dimension");
      sub->add_option("--s", cx_s, "Sparsity (fourier case)");
      sub->add_option("--case", cx_case, "fourier or trivial")->check(CLI::IsMember({"fourier", "trivial"}));
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : orbitcs::kExitConfig;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    orbitcs::ExperimentConfig config;
    if (!flags.config_path.empty()) config = orbitcs::load_config(flags.config_path);
    if (flags.seed) config.seed = *flags.seed;
    if (flags.threads) config.threads = *flags.threads;
    if (cx_n) config.cx_n = *cx_n;
    if (cx_s) config.cx_s = *cx_s;
    if (cx_case) config.cx_case = *cx_case;
    const std::string out_path = !flags.out.empty() ? flags.out : config.output;

    orbitcs::RunOptions options;
    options.timestamp = !flags.no_timestamp;

    std::ostringstream csv;
    const bool csv_to_stdout = out_path.empty();
    std::ostream& report = (csv_to_stdout && command != "verify") ? std::cerr : std::cout;
    const int code = orbitcs::run_command(command, config, options, csv, report);
    if (command != "verify") {
      if (csv_to_stdout) {
        std::cout << csv.str();
      } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) throw orbitcs::ConfigError("cannot write output file '" + out_path + "'");
        file << csv.str();
      }
    }
    return code;
  } catch (const orbitcs::BudgetExceeded& e) {
    std::cerr << "budget guard: " << e.what() << '\n';
    return orbitcs::kExitBudget;
  } catch (const orbitcs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return orbitcs::kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return orbitcs::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return orbitcs::kExitInvariant;
  }
}
