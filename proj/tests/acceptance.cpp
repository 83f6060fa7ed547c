// Acceptance suite: every criterion prints one PASS/FAIL line; the process
// exits nonzero if any criterion fails. Heavier end-to-end criteria reuse
// the experiment harness with its production defaults.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "imann/harness.hpp"

using namespace imann;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

// |value - expected| relative to the problem scale, floored at 1.
double rel_error(double value, double expected, double scale) {
  return std::abs(value - expected) / std::max(1.0, scale);
}

void criterion_1_dimensionality() {
  const int d = dimensionality(NetworkSpec{1, {5, 5}, 1});
  report(1, d == 47, "dimensionality(1-5-5-1) = " + std::to_string(d) + ", expected 47");
}

void criterion_2_quadrature() {
  const QuadratureRule rule = map_rule(gauss_legendre_rule(80), -4.0, 4.0);

  double weight_sum = 0.0;
  for (double w : rule.weights) weight_sum += w;

  // Monomial integrals against the closed-form antiderivative; degree 159
  // is the highest the 80-point rule integrates exactly. Odd powers have a
  // zero integral, so errors are measured against the mass sum |w f|.
  const int powers[3] = {2, 5, 159};
  const double expected[3] = {128.0 / 3.0, 0.0, 0.0};
  bool pass = std::abs(weight_sum - 8.0) <= 1e-12 * 8.0;
  std::string detail = "weights sum " + std::to_string(weight_sum);
  for (int k = 0; k < 3; ++k) {
    double integral = 0.0;
    double mass = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double term = rule.weights[i] * std::pow(rule.nodes[i], powers[k]);
      integral += term;
      mass += std::abs(term);
    }
    const double err = rel_error(integral, expected[k], mass);
    pass = pass && err <= 1e-10;
    detail += ", x^" + std::to_string(powers[k]) + " rel err " + std::to_string(err);
  }
  report(2, pass, detail);
}

void criterion_3_oracle_equivalence() {
  std::mt19937_64 engine(20240820);
  bool pass = true;
  double worst = 0.0;
  std::string worst_id;
  for (const ModelFormulation& f : formulation_registry()) {
    std::vector<std::uniform_real_distribution<double>> coords;
    for (const Interval& b : f.domain().bounds()) coords.emplace_back(b.lo, b.hi);
    std::vector<double> x(f.domain().dimension());
    for (int rep = 0; rep < 1000; ++rep) {
      for (std::size_t d = 0; d < x.size(); ++d) x[d] = coords[d](engine);
      const std::vector<double> s = ideal_subfunctions(f, x);
      const double combined = combine(f, x, s);
      const double target = f.target.evaluate(x);
      const double err = rel_error(combined, target, std::abs(target));
      if (err > worst) {
        worst = err;
        worst_id = f.id;
      }
      pass = pass && err <= 1e-12;
    }
  }
  report(3, pass,
         "combine(ideal) vs target over 9 x 1000 points, worst rel err " +
             std::to_string(worst) + " (" + worst_id + ")");
}

void criterion_4_error_integral() {
  const ModelFormulation& f1 = find_formulation("f1");
  const ModelFormulation& f9 = find_formulation("f9");
  const RealFunction poly = f1.target.evaluate;
  const RealFunction poly_plus_1 = [&](std::span<const double> x) {
    return poly_target(x[0]) + 1.0;
  };
  const RealFunction rosen = f9.target.evaluate;
  const RealFunction rosen_plus_1 = [&](std::span<const double> x) {
    return rosenbrock_target(x) + 1.0;
  };

  const double self = error_integral(poly, poly, f1.domain());
  const double offset_1d = error_integral(poly_plus_1, poly, f1.domain());
  const double offset_2d = error_integral(rosen_plus_1, rosen, f9.domain());
  const bool pass = self <= 1e-10 && std::abs(offset_1d - 8.0) <= 1e-9 &&
                    std::abs(offset_2d - 12.0) <= 1e-9;
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "R(target,target)=%.3g, R(target+1)=%.12g (1-D), %.12g (2-D)", self,
                offset_1d, offset_2d);
  report(4, pass, detail);
}

void criterion_5_gradient_oracle() {
  std::mt19937_64 engine(77);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::uniform_real_distribution<double> param(-0.7, 0.7);
  const DnnSpec specs[] = {DnnSpec{1, {3}}, DnnSpec{1, {5, 3}}, DnnSpec{2, {4}},
                           DnnSpec{2, {4, 4}}, DnnSpec{3, {6, 2}}};
  bool pass = true;
  double worst = 0.0;
  for (const DnnSpec& spec : specs) {
    std::vector<DataPoint> points;
    for (int i = 0; i < 6; ++i) {
      std::vector<double> x(static_cast<std::size_t>(spec.n_in));
      for (double& v : x) v = coord(engine);
      points.push_back(DataPoint{x, coord(engine)});
    }
    const Dataset data{points};
    std::vector<double> w(static_cast<std::size_t>(dnn_parameter_count(spec)));
    for (double& v : w) v = param(engine);

    const std::vector<double> grad = dnn_gradient(spec, w, data);
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double saved = w[i];
      w[i] = saved + 1e-6;
      const double up = dnn_loss(spec, w, data);
      w[i] = saved - 1e-6;
      const double down = dnn_loss(spec, w, data);
      w[i] = saved;
      const double fd = (up - down) / 2e-6;
      const double err = rel_error(grad[i], fd, std::abs(fd));
      if (err > worst) worst = err;
      pass = pass && err <= 1e-5;
    }
  }
  report(5, pass,
         "backprop vs central differences on 5 specs, worst rel err " +
             std::to_string(worst));
}

double sphere(std::span<const double> w) {
  double sum = 0.0;
  for (double v : w) sum += v * v;
  return sum;
}

void criterion_6_cmaes() {
  int solved = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CmaConfig config;
    config.dimension = 4;
    config.initial_mean = {1.0, 1.0, 1.0, 1.0};
    config.initial_sigma = 0.3;
    config.max_evaluations = 5000;
    config.fitness_target = 1e-12;
    config.seed = seed;
    const OptimizationResult result = optimize(sphere, config);
    if (result.best_fitness < 1e-9) ++solved;
  }

  bool rank_invariant = true;
  {
    CmaConfig config;
    config.dimension = 4;
    config.initial_mean = {1.0, 1.0, 1.0, 1.0};
    config.initial_sigma = 0.3;
    config.max_evaluations = 100000;
    config.seed = 424242;
    CmaState raw(config);
    CmaState warped(config);
    for (int gen = 0; gen < 50 && rank_invariant; ++gen) {
      const auto ca = raw.ask();
      const auto cb = warped.ask();
      rank_invariant = rank_invariant && ca == cb;
      std::vector<double> fa(ca.size());
      std::vector<double> fb(cb.size());
      for (std::size_t k = 0; k < ca.size(); ++k) {
        fa[k] = sphere(ca[k]);
        fb[k] = std::exp(fa[k]);
      }
      raw.tell(ca, fa);
      warped.tell(cb, fb);
      rank_invariant = rank_invariant && raw.best_vector() == warped.best_vector();
    }
  }

  report(6, solved >= 18 && rank_invariant,
         "4-D sphere solved to <1e-9 in " + std::to_string(solved) +
             "/20 seeds; rank invariance " + (rank_invariant ? "holds" : "broken"));
}

ExperimentConfig paper_config(const std::string& formulation, const std::string& method) {
  ExperimentConfig config;
  config.formulation_id = formulation;
  config.method = method;
  config.restarts = 20;
  config.base_seed = 20240821;
  config.threads = 0;  // all cores
  return config;
}

double best_r(const ExperimentResult& result, int size) {
  for (const RunRecord& r : result.best_per_size) {
    if (r.dataset_size == size) return r.error_integral;
  }
  return std::numeric_limits<double>::infinity();
}

void criteria_7_8_poly_constant() {
  ExperimentConfig imann_config = paper_config("f1", "imann");
  imann_config.sizes = {9};
  const ExperimentResult imann = run_experiment(imann_config);
  const double r_imann = best_r(imann, 9);
  char detail[120];
  std::snprintf(detail, sizeof(detail), "f1, 9 points, best-of-20: R = %.3e", r_imann);
  report(7, r_imann <= 1e-2, detail);

  ExperimentConfig dnn_config = paper_config("f1", "dnn");
  dnn_config.sizes = {9};
  const ExperimentResult dnn = run_experiment(dnn_config);
  const double r_dnn = best_r(dnn, 9);
  std::snprintf(detail, sizeof(detail), "f1, 9 points: imann R = %.3e < dnn R = %.3e",
                r_imann, r_dnn);
  report(8, r_imann < r_dnn, detail);
}

void criterion_9_rosenbrock() {
  ExperimentConfig imann_config = paper_config("f9", "imann");
  imann_config.sizes = {16, 256};
  const ExperimentResult imann = run_experiment(imann_config);

  ExperimentConfig dnn_config = paper_config("f9", "dnn");
  dnn_config.sizes = {16, 256};
  const ExperimentResult dnn = run_experiment(dnn_config);

  const double imann_16 = best_r(imann, 16);
  const double dnn_16 = best_r(dnn, 16);
  const double imann_256 = best_r(imann, 256);
  const double dnn_256 = best_r(dnn, 256);

  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "f9: 16 pts imann %.3e vs dnn %.3e; 256 pts imann %.3e vs dnn %.3e "
                "(gap x%.1f, reported only)",
                imann_16, dnn_16, imann_256, dnn_256, dnn_256 / imann_256);
  report(9, imann_16 < dnn_16 && imann_256 < dnn_256, detail);
}

void criterion_10_determinism() {
  ExperimentConfig config = paper_config("f1", "imann");
  config.sizes = {3, 5};
  config.restarts = 2;
  config.cma.max_evaluations = 1500;

  const ExperimentResult first = run_experiment(config);
  const ExperimentResult second = run_experiment(config);

  const auto dir = std::filesystem::temp_directory_path() / "imann_acceptance";
  std::filesystem::create_directories(dir);
  emit_csv(first.attempts, dir / "first.csv");
  emit_csv(second.attempts, dir / "second.csv");
  std::vector<RunRecord> a = parse_csv(dir / "first.csv");
  std::vector<RunRecord> b = parse_csv(dir / "second.csv");

  bool pass = a.size() == b.size();
  if (pass) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i].wall_time_ms = 0;
      b[i].wall_time_ms = 0;
      pass = pass && a[i] == b[i];
    }
  }
  report(10, pass,
         "re-run sweep reproduces every CSV cell except wall_time_ms (" +
             std::to_string(a.size()) + " rows)");
}

}  // namespace

int main() {
  const auto started = std::chrono::steady_clock::now();
  criterion_1_dimensionality();
  criterion_2_quadrature();
  criterion_3_oracle_equivalence();
  criterion_4_error_integral();
  criterion_5_gradient_oracle();
  criterion_6_cmaes();
  criteria_7_8_poly_constant();
  criterion_9_rosenbrock();
  criterion_10_determinism();
  const auto elapsed = std::chrono::duration_cast<std::chrono::seconds>(
      std::chrono::steady_clock::now() - started);
  std::printf("%d criterion(s) failed; total %lld s\n", failures,
              static_cast<long long>(elapsed.count()));
  return failures == 0 ? 0 : 1;
}
