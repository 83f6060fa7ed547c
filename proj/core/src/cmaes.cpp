#include "imann/cmaes.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "imann/errors.hpp"

namespace imann {

int default_population_size(int dimension) {
  if (dimension < 1) {
    throw std::invalid_argument("default_population_size: dimension must be positive");
  }
  return 4 + static_cast<int>(std::floor(3.0 * std::log(static_cast<double>(dimension))));
}

namespace {

/// Deterministic standard-normal stream (Marsaglia polar method over a
/// 64-bit Mersenne Twister). Avoids std::normal_distribution so equal seeds
/// give equal candidate sequences on every standard library.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * unit() - 1.0;
      v = 2.0 * unit() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * factor;
    has_spare_ = true;
    return u * factor;
  }

 private:
  double unit() {
    // 53-bit mantissa in [0, 1).
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace

struct CmaState::Impl {
  // Problem setup.
  int dim = 0;
  int lambda = 0;
  int mu = 0;
  double condition_cap = 1e14;

  // Recombination weights and strategy constants (reference defaults).
  Eigen::VectorXd weights;
  double mueff = 0.0;
  double cc = 0.0;
  double cs = 0.0;
  double c1 = 0.0;
  double cmu = 0.0;
  double damps = 0.0;
  double chi_n = 0.0;
  long eigen_interval = 1;  // refresh every ceil(D/10) generations

  // Distribution state.
  Eigen::VectorXd mean;
  double sigma = 0.5;
  Eigen::MatrixXd cov;
  Eigen::VectorXd p_sigma;
  Eigen::VectorXd p_c;

  // Cached factorization C = B diag(d^2) B^T.
  Eigen::MatrixXd basis;
  Eigen::VectorXd scales;
  Eigen::MatrixXd inv_sqrt_cov;
  long generations_since_refresh = 0;

  // Bookkeeping.
  long generation = 0;
  long evaluations = 0;
  GaussianStream rng{0};
  bool sample_pending = false;
  std::vector<std::vector<double>> last_sample;

  std::vector<double> best_vector;
  double best_fitness = std::numeric_limits<double>::infinity();

  void refresh_eigensystem();
  Eigen::VectorXd as_vector(const std::vector<double>& v) const;
};

Eigen::VectorXd CmaState::Impl::as_vector(const std::vector<double>& v) const {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

void CmaState::Impl::refresh_eigensystem() {
  if (!cov.allFinite()) {
    throw DecompositionError("cmaes: covariance contains non-finite entries");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw DecompositionError("cmaes: eigendecomposition failed");
  }
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const double min_ev = ev.minCoeff();
  const double max_ev = ev.maxCoeff();
  if (!(min_ev > 0.0)) {
    throw DecompositionError("cmaes: covariance lost positive definiteness");
  }
  if (max_ev / min_ev > condition_cap) {
    throw DecompositionError("cmaes: covariance condition number exceeded " +
                             std::to_string(condition_cap));
  }
  basis = solver.eigenvectors();
  scales = ev.cwiseSqrt();
  inv_sqrt_cov = basis * scales.cwiseInverse().asDiagonal() * basis.transpose();
  generations_since_refresh = 0;
}

CmaState::CmaState(const CmaConfig& config) : impl_(std::make_unique<Impl>()) {
  Impl& s = *impl_;
  if (config.dimension < 1) {
    throw std::invalid_argument("CmaConfig: dimension must be positive");
  }
  s.dim = config.dimension;
  s.lambda = config.lambda > 0 ? config.lambda : default_population_size(s.dim);
  if (s.lambda < 2) {
    throw std::invalid_argument("CmaConfig: population size must be at least 2");
  }
  if (!(config.initial_sigma > 0.0)) {
    throw std::invalid_argument("CmaConfig: initial_sigma must be positive");
  }
  if (config.max_evaluations < s.lambda) {
    throw std::invalid_argument("CmaConfig: max_evaluations must cover one generation");
  }
  if (!(config.condition_cap > 1.0)) {
    throw std::invalid_argument("CmaConfig: condition_cap must exceed 1");
  }
  s.condition_cap = config.condition_cap;

  if (config.initial_mean.empty()) {
    s.mean = Eigen::VectorXd::Zero(s.dim);
  } else {
    if (static_cast<int>(config.initial_mean.size()) != s.dim) {
      throw std::invalid_argument("CmaConfig: initial_mean has wrong length");
    }
    for (double v : config.initial_mean) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("CmaConfig: initial_mean must be finite");
      }
    }
    s.mean = s.as_vector(config.initial_mean);
  }
  s.sigma = config.initial_sigma;

  const int n = s.dim;
  s.mu = s.lambda / 2;
  s.weights.resize(s.mu);
  for (int i = 0; i < s.mu; ++i) {
    s.weights[i] = std::log(s.mu + 0.5) - std::log(static_cast<double>(i + 1));
  }
  s.weights /= s.weights.sum();
  s.mueff = 1.0 / s.weights.squaredNorm();

  s.cc = (4.0 + s.mueff / n) / (n + 4.0 + 2.0 * s.mueff / n);
  s.cs = (s.mueff + 2.0) / (n + s.mueff + 5.0);
  s.c1 = 2.0 / ((n + 1.3) * (n + 1.3) + s.mueff);
  s.cmu = std::min(1.0 - s.c1, 2.0 * (s.mueff - 2.0 + 1.0 / s.mueff) /
                                   ((n + 2.0) * (n + 2.0) + s.mueff));
  s.damps = 1.0 + 2.0 * std::max(0.0, std::sqrt((s.mueff - 1.0) / (n + 1.0)) - 1.0) + s.cs;
  s.chi_n = std::sqrt(static_cast<double>(n)) *
            (1.0 - 1.0 / (4.0 * n) + 1.0 / (21.0 * static_cast<double>(n) * n));
  s.eigen_interval = (n + 9) / 10;

  s.cov = Eigen::MatrixXd::Identity(n, n);
  s.p_sigma = Eigen::VectorXd::Zero(n);
  s.p_c = Eigen::VectorXd::Zero(n);
  s.rng = GaussianStream(config.seed);
  s.refresh_eigensystem();
}

CmaState::~CmaState() = default;
CmaState::CmaState(CmaState&&) noexcept = default;
CmaState& CmaState::operator=(CmaState&&) noexcept = default;

int CmaState::dimension() const { return impl_->dim; }
int CmaState::lambda() const { return impl_->lambda; }
long CmaState::generation() const { return impl_->generation; }
long CmaState::evaluations() const { return impl_->evaluations; }
double CmaState::sigma() const { return impl_->sigma; }

std::vector<double> CmaState::mean() const {
  return std::vector<double>(impl_->mean.data(), impl_->mean.data() + impl_->dim);
}

const std::vector<double>& CmaState::best_vector() const { return impl_->best_vector; }
double CmaState::best_fitness() const { return impl_->best_fitness; }

std::vector<std::vector<double>> CmaState::ask() {
  Impl& s = *impl_;
  if (!std::isfinite(s.sigma) || !s.mean.allFinite()) {
    throw DecompositionError("cmaes: search distribution diverged");
  }
  if (s.generations_since_refresh >= s.eigen_interval) {
    s.refresh_eigensystem();
  }

  std::vector<std::vector<double>> candidates(static_cast<std::size_t>(s.lambda));
  Eigen::VectorXd z(s.dim);
  for (int k = 0; k < s.lambda; ++k) {
    for (int i = 0; i < s.dim; ++i) z[i] = s.scales[i] * s.rng.next();
    const Eigen::VectorXd x = s.mean + s.sigma * (s.basis * z);
    candidates[static_cast<std::size_t>(k)].assign(x.data(), x.data() + s.dim);
  }
  s.last_sample = candidates;
  s.sample_pending = true;
  return candidates;
}

void CmaState::tell(const std::vector<std::vector<double>>& candidates,
                    std::span<const double> fitnesses) {
  Impl& s = *impl_;
  if (!s.sample_pending) {
    throw std::logic_error("cmaes: tell without a pending ask (generation already told)");
  }
  if (candidates.size() != s.last_sample.size() ||
      fitnesses.size() != s.last_sample.size()) {
    throw std::invalid_argument("cmaes: candidates/fitnesses length mismatch");
  }
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    if (candidates[k] != s.last_sample[k]) {
      throw std::invalid_argument("cmaes: candidates are not from the matching ask");
    }
  }
  for (double f : fitnesses) {
    if (std::isnan(f) || f == -std::numeric_limits<double>::infinity()) {
      throw std::invalid_argument(
          "cmaes: fitnesses must be finite or the +infinity sentinel");
    }
  }

  // Rank candidates; ties keep submission order.
  std::vector<int> order(static_cast<std::size_t>(s.lambda));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return fitnesses[static_cast<std::size_t>(a)] < fitnesses[static_cast<std::size_t>(b)];
  });

  s.evaluations += s.lambda;
  s.generation += 1;
  s.generations_since_refresh += 1;
  s.sample_pending = false;

  if (s.best_vector.empty() ||
      fitnesses[static_cast<std::size_t>(order[0])] < s.best_fitness) {
    s.best_vector = candidates[static_cast<std::size_t>(order[0])];
    s.best_fitness = fitnesses[static_cast<std::size_t>(order[0])];
  }

  // Recombination: weighted mean of the best mu candidates.
  const Eigen::VectorXd old_mean = s.mean;
  s.mean = Eigen::VectorXd::Zero(s.dim);
  for (int i = 0; i < s.mu; ++i) {
    s.mean += s.weights[i] * s.as_vector(candidates[static_cast<std::size_t>(order[i])]);
  }
  const Eigen::VectorXd y_w = (s.mean - old_mean) / s.sigma;

  // Step-size path and stall detector.
  s.p_sigma = (1.0 - s.cs) * s.p_sigma +
              std::sqrt(s.cs * (2.0 - s.cs) * s.mueff) * (s.inv_sqrt_cov * y_w);
  const double ps_norm = s.p_sigma.norm();
  const double expected = std::sqrt(
      1.0 - std::pow(1.0 - s.cs, 2.0 * static_cast<double>(s.generation)));
  const bool hsig = ps_norm / expected / s.chi_n < 1.4 + 2.0 / (s.dim + 1.0);

  // Covariance path, then rank-one + rank-mu update.
  s.p_c = (1.0 - s.cc) * s.p_c;
  if (hsig) s.p_c += std::sqrt(s.cc * (2.0 - s.cc) * s.mueff) * y_w;

  const double decay = 1.0 - s.c1 - s.cmu;
  Eigen::MatrixXd updated = decay * s.cov;
  updated += s.c1 * (s.p_c * s.p_c.transpose());
  if (!hsig) updated += s.c1 * s.cc * (2.0 - s.cc) * s.cov;
  for (int i = 0; i < s.mu; ++i) {
    const Eigen::VectorXd y =
        (s.as_vector(candidates[static_cast<std::size_t>(order[i])]) - old_mean) / s.sigma;
    updated += (s.cmu * s.weights[i]) * (y * y.transpose());
  }
  s.cov = 0.5 * (updated + updated.transpose());

  s.sigma *= std::exp((s.cs / s.damps) * (ps_norm / s.chi_n - 1.0));
}

OptimizationResult optimize(
    const std::function<double(std::span<const double>)>& objective,
    const CmaConfig& config) {
  CmaState state(config);
  const int lambda = state.lambda();

  OptimizationResult result;
  result.best_fitness = std::numeric_limits<double>::infinity();

  std::vector<double> fitnesses(static_cast<std::size_t>(lambda));
  while (true) {
    if (!result.best_vector.empty() && result.best_fitness <= config.fitness_target) {
      break;
    }
    if (state.evaluations() + lambda > config.max_evaluations) break;

    std::vector<std::vector<double>> candidates;
    try {
      candidates = state.ask();
    } catch (const DecompositionError&) {
      result.aborted = true;
      break;
    }
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      fitnesses[k] = objective(candidates[k]);
    }
    state.tell(candidates, fitnesses);

    result.best_vector = state.best_vector();
    result.best_fitness = state.best_fitness();
    result.history.emplace_back(state.generation(), state.best_fitness());
  }

  result.evaluations_used = state.evaluations();
  if (result.best_vector.empty()) {
    // Only reachable if the very first ask aborts; report the untouched mean.
    result.best_vector = state.mean();
  }
  return result;
}

}  // namespace imann
