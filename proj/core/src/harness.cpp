#include "imann/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>
#include <thread>
#include <utility>

#include "imann/errors.hpp"
#include "imann/network.hpp"

namespace imann {

std::vector<std::vector<double>> sample_grid(const Domain& domain, int per_dim) {
  if (per_dim < 1) {
    throw std::invalid_argument("sample_grid: per_dim must be positive");
  }
  std::vector<std::vector<double>> axes;
  for (const Interval& b : domain.bounds()) {
    std::vector<double> axis;
    if (per_dim == 1) {
      axis.push_back(0.5 * (b.lo + b.hi));
    } else {
      for (int i = 0; i < per_dim; ++i) {
        axis.push_back(i == per_dim - 1
                           ? b.hi
                           : b.lo + (b.hi - b.lo) * i / (per_dim - 1));
      }
    }
    axes.push_back(std::move(axis));
  }

  std::vector<std::vector<double>> points;
  std::vector<std::size_t> index(domain.dimension(), 0);
  const std::size_t total = [&] {
    std::size_t t = 1;
    for (std::size_t d = 0; d < domain.dimension(); ++d) t *= axes[d].size();
    return t;
  }();
  points.reserve(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::vector<double> point(domain.dimension());
    for (std::size_t d = 0; d < domain.dimension(); ++d) {
      point[d] = axes[d][index[d]];
    }
    points.push_back(std::move(point));
    for (std::size_t d = domain.dimension(); d-- > 0;) {
      if (++index[d] < axes[d].size()) break;
      index[d] = 0;
    }
  }
  return points;
}

Dataset build_dataset(const ModelFormulation& formulation, int size) {
  if (size < 1) {
    throw std::invalid_argument("build_dataset: size must be positive");
  }
  int per_dim = size;
  if (formulation.dimension() == 2) {
    per_dim = static_cast<int>(std::lround(std::sqrt(static_cast<double>(size))));
    if (per_dim * per_dim != size) {
      throw std::invalid_argument("build_dataset: 2-D sizes must be perfect squares");
    }
  }
  std::vector<DataPoint> points;
  for (std::vector<double>& x : sample_grid(formulation.domain(), per_dim)) {
    const double y = formulation.target.evaluate(x);
    points.push_back(DataPoint{std::move(x), y});
  }
  return Dataset(std::move(points));
}

std::vector<int> default_sizes(int dimension) {
  if (dimension == 1) return {3, 5, 9, 17, 33, 65};
  return {4, 16, 64, 256};
}

std::string default_architecture(const std::string& method,
                                 const ModelFormulation& formulation) {
  if (method == "imann") {
    return std::to_string(formulation.dimension()) + "-5-5-" +
           std::to_string(formulation.subfunction_count);
  }
  if (method == "dnn") {
    return formulation.dimension() == 1 ? "1-32-16-16-1" : "2-32-32-16-1";
  }
  throw std::invalid_argument("default_architecture: unknown method '" + method + "'");
}

namespace {

std::uint64_t attempt_seed(std::uint64_t base_seed, int size_index, int restart_index) {
  return base_seed ^ static_cast<std::uint64_t>(size_index * 1000 + restart_index);
}

RealFunction target_function(const ModelFormulation& formulation) {
  return formulation.target.evaluate;
}

RunRecord imann_attempt(const ExperimentConfig& config,
                        const ModelFormulation& formulation, const Dataset& dataset,
                        RunRecord record) {
  const std::string arch = record.arch;
  const NetworkSpec spec = parse_architecture(arch);
  const auto objective = objective_for(spec, formulation, dataset);

  CmaConfig cma = config.cma;
  cma.dimension = dimensionality(spec);
  cma.seed = record.seed;
  const OptimizationResult opt = optimize(objective, cma);

  record.fitness = opt.best_fitness;
  record.evals = opt.evaluations_used;
  record.status = opt.aborted ? "aborted" : "ok";

  const HybridPredictor predictor = make_hybrid(spec, opt.best_vector, formulation);
  const RealFunction prediction = [&predictor](std::span<const double> x) {
    return predict(predictor, x);
  };
  record.error_integral = error_integral(prediction, target_function(formulation),
                                         formulation.domain(), config.quad_points);
  return record;
}

RunRecord dnn_attempt(const ExperimentConfig& config,
                      const ModelFormulation& formulation, const Dataset& dataset,
                      RunRecord record) {
  const DnnSpec spec = parse_dnn_architecture(record.arch);
  if (spec.n_in != formulation.dimension()) {
    throw std::invalid_argument("dnn_attempt: architecture does not fit " +
                                formulation.id);
  }
  TrainConfig train = config.train;
  train.seed = record.seed;
  const TrainResult trained = train_dnn(spec, dataset, train);

  double sum_sq = 0.0;
  for (const DataPoint& p : dataset.points()) {
    const double r = dnn_forward(spec, trained.weights, p.x) - p.y;
    sum_sq += r * r;
  }
  record.fitness = sum_sq;
  record.evals = trained.epochs_run;
  record.status = trained.diverged ? "aborted" : "ok";

  const RealFunction prediction = [&spec, &trained](std::span<const double> x) {
    return dnn_forward(spec, trained.weights, x);
  };
  record.error_integral = error_integral(prediction, target_function(formulation),
                                         formulation.domain(), config.quad_points);
  return record;
}

}  // namespace

RunRecord run_attempt(const ExperimentConfig& config, const Dataset& dataset,
                      int size_index, int restart_index) {
  const ModelFormulation& formulation = find_formulation(config.formulation_id);

  RunRecord record;
  record.formulation = formulation.id;
  record.method = config.method;
  record.arch = config.arch.empty() ? default_architecture(config.method, formulation)
                                    : config.arch;
  record.dataset_size = static_cast<int>(dataset.size());
  record.restart_index = restart_index;
  record.seed = attempt_seed(config.base_seed, size_index, restart_index);

  const auto started = std::chrono::steady_clock::now();
  try {
    if (config.method == "imann") {
      record = imann_attempt(config, formulation, dataset, std::move(record));
    } else if (config.method == "dnn") {
      record = dnn_attempt(config, formulation, dataset, std::move(record));
    } else {
      throw std::invalid_argument("run_attempt: unknown method '" + config.method + "'");
    }
  } catch (const EvaluationError&) {
    record.error_integral = std::numeric_limits<double>::infinity();
    record.fitness = std::numeric_limits<double>::infinity();
    record.status = "failed";
  }
  const auto finished = std::chrono::steady_clock::now();
  record.wall_time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(finished - started).count();
  return record;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const ModelFormulation& formulation = find_formulation(config.formulation_id);
  ExperimentConfig effective = config;
  if (effective.sizes.empty()) {
    effective.sizes = default_sizes(formulation.dimension());
  }
  if (effective.restarts < 1) {
    throw std::invalid_argument("run_experiment: restarts must be positive");
  }
  int threads = effective.threads;
  if (threads == 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
  }

  ExperimentResult result;
  for (std::size_t size_index = 0; size_index < effective.sizes.size(); ++size_index) {
    const Dataset dataset = build_dataset(formulation, effective.sizes[size_index]);

    std::vector<RunRecord> attempts(static_cast<std::size_t>(effective.restarts));
    std::vector<std::future<RunRecord>> inflight;
    int next = 0;
    int done = 0;
    while (done < effective.restarts) {
      while (next < effective.restarts && static_cast<int>(inflight.size()) < threads) {
        const int restart = next++;
        inflight.push_back(std::async(std::launch::async, [&, restart] {
          return run_attempt(effective, dataset, static_cast<int>(size_index), restart);
        }));
      }
      RunRecord record = inflight.front().get();
      inflight.erase(inflight.begin());
      attempts[static_cast<std::size_t>(record.restart_index)] = std::move(record);
      ++done;
    }

    // Best by R; failures only count when nothing succeeded. Ties keep the
    // lowest restart index.
    const RunRecord* best = nullptr;
    for (const RunRecord& r : attempts) {
      if (r.status == "failed") continue;
      if (best == nullptr || r.error_integral < best->error_integral) best = &r;
    }
    if (best == nullptr) {
      for (const RunRecord& r : attempts) {
        if (best == nullptr || r.error_integral < best->error_integral) best = &r;
      }
    }
    result.best_per_size.push_back(*best);
    for (RunRecord& r : attempts) result.attempts.push_back(std::move(r));
  }
  return result;
}

}  // namespace imann
