// Command line front end: single runs, dataset-size sweeps, and report
// aggregation over previously written attempt CSVs.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "imann/harness.hpp"

namespace {

// Flat key=value config file mirroring the flags; '#' starts a comment.
// Values apply only where the flag was not given, so flags win.
class ConfigKeys {
 public:
  void bind(CLI::App& cmd, const std::string& key,
            std::function<void(const std::string&)> apply) {
    entries_.push_back({&cmd, key, std::move(apply)});
  }

  void apply_file(const std::string& path) const {
    std::ifstream in(path);
    if (!in) throw CLI::FileError::Missing(path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      const auto last = line.find_last_not_of(" \t\r");
      line = line.substr(first, last - first + 1);
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw CLI::ParseError("config " + path + ":" + std::to_string(line_no) +
                                  ": expected key=value",
                              CLI::ExitCodes::InvalidError);
      }
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
      };
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      bool known = false;
      for (const Entry& entry : entries_) {
        if (entry.key != key) continue;
        known = true;
        if (entry.cmd->count("--" + entry.key) == 0) entry.apply(value);
      }
      if (!known) {
        throw CLI::ParseError("config " + path + ": unknown key '" + key + "'",
                              CLI::ExitCodes::InvalidError);
      }
    }
  }

 private:
  struct Entry {
    CLI::App* cmd;
    std::string key;
    std::function<void(const std::string&)> apply;
  };
  std::vector<Entry> entries_;
};

template <typename T>
T parse_value(const std::string& key, const std::string& value) {
  T out{};
  if (!CLI::detail::lexical_cast(value, out)) {
    throw CLI::ParseError("config: bad value '" + value + "' for " + key,
                          CLI::ExitCodes::InvalidError);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    const auto comma = value.find(',', pos);
    const std::string part =
        value.substr(pos, comma == std::string::npos ? value.size() - pos : comma - pos);
    out.push_back(parse_value<int>(key, part));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

struct CommonOptions {
  imann::ExperimentConfig config;
  std::string out_dir;
  std::string config_file;
};

template <typename T>
void bind_option(CLI::App& cmd, ConfigKeys& keys, const std::string& name, T& target,
                 const std::string& help) {
  cmd.add_option("--" + name, target, help)->capture_default_str();
  keys.bind(cmd, name, [&target, name](const std::string& v) {
    target = parse_value<T>(name, v);
  });
}

void add_common_flags(CLI::App& cmd, ConfigKeys& keys, CommonOptions& opts) {
  cmd.add_option("--arch", opts.config.arch,
                 "Architecture string, e.g. 1-5-5-1 (default per method)");
  keys.bind(cmd, "arch",
            [&opts](const std::string& v) { opts.config.arch = v; });
  bind_option(cmd, keys, "restarts", opts.config.restarts, "Seeded attempts per size");
  bind_option(cmd, keys, "seed", opts.config.base_seed,
              "Base seed of the attempt schedule");
  bind_option(cmd, keys, "quad-points", opts.config.quad_points,
              "Gauss-Legendre points per dimension for the error integral");
  bind_option(cmd, keys, "threads", opts.config.threads,
              "Concurrent attempts (0 = hardware concurrency)");
  bind_option(cmd, keys, "budget", opts.config.cma.max_evaluations,
              "Objective evaluations per imann attempt");
  bind_option(cmd, keys, "sigma", opts.config.cma.initial_sigma,
              "Initial step size for the weight search");
  bind_option(cmd, keys, "lambda", opts.config.cma.lambda,
              "Population size (0 = 4 + floor(3 ln D))");
  bind_option(cmd, keys, "fitness-target", opts.config.cma.fitness_target,
              "Stop an imann attempt at this training fitness");
  bind_option(cmd, keys, "lr", opts.config.train.learning_rate, "DNN learning rate");
  bind_option(cmd, keys, "epochs", opts.config.train.max_epochs, "DNN epoch cap");
  bind_option(cmd, keys, "patience", opts.config.train.plateau_patience,
              "DNN plateau patience in epochs");
  cmd.add_option("--config", opts.config_file,
                 "Read options from a flat key=value file (flags override)")
      ->check(CLI::ExistingFile);
}

void print_record(const imann::RunRecord& r) {
  std::printf("%s %s %s size=%d restart=%d seed=%llu F=%.6g R=%.6g evals=%ld %s\n",
              r.formulation.c_str(), r.method.c_str(), r.arch.c_str(),
              r.dataset_size, r.restart_index,
              static_cast<unsigned long long>(r.seed), r.fitness, r.error_integral,
              r.evals, r.status.c_str());
}

void write_outputs(const imann::ExperimentResult& result,
                   const std::string& formulation, const std::string& method,
                   const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string stem = formulation + "_" + method;
  imann::emit_csv(result.attempts, out_dir / (stem + "_attempts.csv"));
  imann::emit_csv(result.best_per_size, out_dir / (stem + "_best.csv"));
  imann::emit_plot_data(result.best_per_size, out_dir);
}

int run_single(const CommonOptions& opts, int size) {
  if (opts.config.formulation_id.empty()) {
    std::fprintf(stderr, "run: --formulation is required (flag or config file)\n");
    return 1;
  }
  if (size < 1) {
    std::fprintf(stderr, "run: --size is required (flag or config file)\n");
    return 1;
  }
  imann::ExperimentConfig config = opts.config;
  config.sizes = {size};
  imann::ExperimentResult result = imann::run_experiment(config);
  for (const imann::RunRecord& r : result.attempts) print_record(r);
  std::printf("best: ");
  print_record(result.best_per_size.front());
  if (!opts.out_dir.empty()) {
    write_outputs(result, config.formulation_id, config.method, opts.out_dir);
  }
  return 0;
}

int run_sweep(const CommonOptions& opts, const std::vector<std::string>& formulations,
              const std::string& method) {
  std::vector<std::string> ids = formulations;
  if (ids.size() == 1 && ids.front() == "all") {
    ids.clear();
    for (const imann::ModelFormulation& f : imann::formulation_registry()) {
      ids.push_back(f.id);
    }
  }
  const std::vector<std::string> methods =
      method == "both" ? std::vector<std::string>{"imann", "dnn"}
                       : std::vector<std::string>{method};
  if (!opts.config.arch.empty() && (ids.size() > 1 || methods.size() > 1)) {
    std::fprintf(stderr, "sweep: --arch needs a single formulation and method\n");
    return 1;
  }

  for (const std::string& id : ids) {
    for (const std::string& m : methods) {
      imann::ExperimentConfig config = opts.config;
      config.formulation_id = id;
      config.method = m;
      imann::ExperimentResult result = imann::run_experiment(config);
      for (const imann::RunRecord& r : result.best_per_size) print_record(r);
      write_outputs(result, id, m, opts.out_dir);
    }
  }
  return 0;
}

int run_report(const std::vector<std::string>& inputs, const std::string& out_dir) {
  std::vector<imann::RunRecord> attempts;
  for (const std::string& path : inputs) {
    for (imann::RunRecord& r : imann::parse_csv(path)) {
      attempts.push_back(std::move(r));
    }
  }

  // Best usable attempt per (formulation, method, size).
  std::map<std::tuple<std::string, std::string, int>, const imann::RunRecord*> best;
  for (const imann::RunRecord& r : attempts) {
    if (r.status == "failed") continue;
    auto key = std::make_tuple(r.formulation, r.method, r.dataset_size);
    auto [it, inserted] = best.try_emplace(key, &r);
    if (!inserted && r.error_integral < it->second->error_integral) it->second = &r;
  }
  std::vector<imann::RunRecord> rows;
  rows.reserve(best.size());
  for (const auto& [key, record] : best) rows.push_back(*record);

  std::filesystem::create_directories(out_dir);
  imann::emit_csv(rows, std::filesystem::path(out_dir) / "report_best.csv");
  imann::emit_plot_data(rows, out_dir);
  for (const imann::RunRecord& r : rows) print_record(r);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid model/network training experiments on benchmark formulations"};
  app.require_subcommand(1);

  ConfigKeys run_keys;
  ConfigKeys sweep_keys;

  CommonOptions run_opts;
  run_opts.config.formulation_id.clear();
  int run_size = 0;
  CLI::App* run_cmd =
      app.add_subcommand("run", "Train one formulation at one dataset size");
  run_cmd->add_option("--formulation", run_opts.config.formulation_id, "f1..f9");
  run_keys.bind(*run_cmd, "formulation",
            [&run_opts](const std::string& v) { run_opts.config.formulation_id = v; });
  run_cmd->add_option("--method", run_opts.config.method, "imann or dnn")
      ->check(CLI::IsMember({"imann", "dnn"}))
      ->capture_default_str();
  run_keys.bind(*run_cmd, "method",
            [&run_opts](const std::string& v) { run_opts.config.method = v; });
  run_cmd->add_option("--size", run_size, "Training dataset size");
  run_keys.bind(*run_cmd, "size", [&run_size](const std::string& v) {
    run_size = parse_value<int>("size", v);
  });
  run_cmd->add_option("--out", run_opts.out_dir, "Directory for CSV and plot output");
  run_keys.bind(*run_cmd, "out",
            [&run_opts](const std::string& v) { run_opts.out_dir = v; });
  add_common_flags(*run_cmd, run_keys, run_opts);

  CommonOptions sweep_opts;
  sweep_opts.out_dir = "results";
  std::vector<std::string> sweep_formulations{"all"};
  std::string sweep_method = "both";
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Dataset-size sweep with best-of-k selection");
  sweep_cmd
      ->add_option("--formulation", sweep_formulations,
                   "f1..f9, a comma list, or 'all'")
      ->delimiter(',')
      ->capture_default_str();
  sweep_keys.bind(*sweep_cmd, "formulation", [&sweep_formulations](const std::string& v) {
    sweep_formulations.clear();
    std::size_t pos = 0;
    while (pos <= v.size()) {
      const auto comma = v.find(',', pos);
      sweep_formulations.push_back(
          v.substr(pos, comma == std::string::npos ? v.size() - pos : comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  });
  sweep_cmd->add_option("--method", sweep_method, "imann, dnn, or both")
      ->check(CLI::IsMember({"imann", "dnn", "both"}))
      ->capture_default_str();
  sweep_keys.bind(*sweep_cmd, "method",
            [&sweep_method](const std::string& v) { sweep_method = v; });
  sweep_cmd
      ->add_option("--sizes", sweep_opts.config.sizes,
                   "Dataset sizes, e.g. 3,5,9 (default per dimension)")
      ->delimiter(',');
  sweep_keys.bind(*sweep_cmd, "sizes", [&sweep_opts](const std::string& v) {
    sweep_opts.config.sizes = parse_int_list("sizes", v);
  });
  sweep_cmd->add_option("--out", sweep_opts.out_dir, "Output directory")
      ->capture_default_str();
  sweep_keys.bind(*sweep_cmd, "out",
            [&sweep_opts](const std::string& v) { sweep_opts.out_dir = v; });
  add_common_flags(*sweep_cmd, sweep_keys, sweep_opts);

  std::vector<std::string> report_inputs;
  std::string report_out = "results";
  CLI::App* report_cmd =
      app.add_subcommand("report", "Aggregate attempt CSVs into plot data");
  report_cmd->add_option("inputs", report_inputs, "Attempt CSV files")
      ->required()
      ->check(CLI::ExistingFile);
  report_cmd->add_option("--out", report_out, "Output directory")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      if (!run_opts.config_file.empty()) run_keys.apply_file(run_opts.config_file);
      return run_single(run_opts, run_size);
    }
    if (sweep_cmd->parsed()) {
      if (!sweep_opts.config_file.empty()) sweep_keys.apply_file(sweep_opts.config_file);
      return run_sweep(sweep_opts, sweep_formulations, sweep_method);
    }
    if (report_cmd->parsed()) {
      return run_report(report_inputs, report_out);
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
