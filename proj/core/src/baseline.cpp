#include "imann/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "imann/network.hpp"

namespace imann {

namespace {

std::vector<int> layer_widths(const DnnSpec& spec) {
  std::vector<int> widths;
  widths.reserve(spec.hidden.size() + 2);
  widths.push_back(spec.n_in);
  for (int h : spec.hidden) widths.push_back(h);
  widths.push_back(1);
  return widths;
}

}  // namespace

void validate(const DnnSpec& spec) {
  if (spec.n_in < 1) {
    throw std::invalid_argument("DnnSpec: n_in must be positive");
  }
  for (int h : spec.hidden) {
    if (h < 1) throw std::invalid_argument("DnnSpec: hidden widths must be positive");
  }
}

int dnn_parameter_count(const DnnSpec& spec) {
  validate(spec);
  const std::vector<int> widths = layer_widths(spec);
  int count = 0;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    count += widths[l] * widths[l + 1] + widths[l + 1];
  }
  return count;
}

DnnSpec parse_dnn_architecture(std::string_view arch, Activation hidden_activation) {
  const NetworkSpec parsed = parse_architecture(arch, hidden_activation);
  if (parsed.n_out != 1) {
    throw std::invalid_argument("parse_dnn_architecture: output width must be 1");
  }
  return DnnSpec{parsed.n_in, parsed.hidden, hidden_activation};
}

std::string dnn_architecture_string(const DnnSpec& spec) {
  std::string s = std::to_string(spec.n_in);
  for (int h : spec.hidden) s += "-" + std::to_string(h);
  return s + "-1";
}

namespace {

struct Workspace {
  // activations[l] holds layer l's outputs (activations[0] is the input).
  std::vector<std::vector<double>> activations;
  std::vector<std::vector<double>> deltas;
};

void prepare(const DnnSpec& spec, Workspace& ws) {
  const std::vector<int> widths = layer_widths(spec);
  ws.activations.resize(widths.size());
  ws.deltas.resize(widths.size());
  for (std::size_t l = 0; l < widths.size(); ++l) {
    ws.activations[l].resize(static_cast<std::size_t>(widths[l]));
    ws.deltas[l].resize(static_cast<std::size_t>(widths[l]));
  }
}

double forward_pass(const DnnSpec& spec, std::span<const double> w,
                    std::span<const double> x, Workspace& ws) {
  const std::vector<int> widths = layer_widths(spec);
  std::copy(x.begin(), x.end(), ws.activations[0].begin());
  int offset = 0;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const int rows = widths[l + 1];
    const int cols = widths[l];
    const bool output_layer = (l + 2 == widths.size());
    const double* weights = w.data() + offset;
    const double* biases = w.data() + offset + rows * cols;
    for (int r = 0; r < rows; ++r) {
      double z = biases[r];
      const double* row = weights + r * cols;
      for (int c = 0; c < cols; ++c) z += row[c] * ws.activations[l][static_cast<std::size_t>(c)];
      ws.activations[l + 1][static_cast<std::size_t>(r)] =
          output_layer ? z : apply_activation(spec.hidden_activation, z);
    }
    offset += rows * cols + rows;
  }
  return ws.activations.back()[0];
}

/// Accumulates d(residual contribution)/d(parameters) into grad, given the
/// already-filled activations and the output-layer delta seed.
void backward_pass(const DnnSpec& spec, std::span<const double> w,
                   double output_delta, std::span<double> grad, Workspace& ws) {
  const std::vector<int> widths = layer_widths(spec);
  ws.deltas.back()[0] = output_delta;

  int offset_after = static_cast<int>(w.size());
  for (std::size_t l = widths.size() - 1; l >= 1; --l) {
    const int rows = widths[l];
    const int cols = widths[l - 1];
    const int offset = offset_after - (rows * cols + rows);
    const double* weights = w.data() + offset;
    double* grad_weights = grad.data() + offset;
    double* grad_biases = grad.data() + offset + rows * cols;

    for (int r = 0; r < rows; ++r) {
      const double d = ws.deltas[l][static_cast<std::size_t>(r)];
      double* grow = grad_weights + r * cols;
      for (int c = 0; c < cols; ++c) {
        grow[c] += d * ws.activations[l - 1][static_cast<std::size_t>(c)];
      }
      grad_biases[r] += d;
    }

    if (l >= 2) {
      for (int c = 0; c < cols; ++c) {
        double sum = 0.0;
        for (int r = 0; r < rows; ++r) {
          sum += weights[r * cols + c] * ws.deltas[l][static_cast<std::size_t>(r)];
        }
        const double y = ws.activations[l - 1][static_cast<std::size_t>(c)];
        ws.deltas[l - 1][static_cast<std::size_t>(c)] =
            sum * activation_derivative_from_value(spec.hidden_activation, y);
      }
    }
    offset_after = offset;
  }
}

void check_shapes(const DnnSpec& spec, std::span<const double> w,
                  std::span<const double> x) {
  if (static_cast<int>(x.size()) != spec.n_in) {
    throw std::invalid_argument("dnn: input has wrong dimension");
  }
  if (static_cast<int>(w.size()) != dnn_parameter_count(spec)) {
    throw std::invalid_argument("dnn: weight vector has wrong length");
  }
}

}  // namespace

double dnn_forward(const DnnSpec& spec, std::span<const double> w,
                   std::span<const double> x) {
  check_shapes(spec, w, x);
  Workspace ws;
  prepare(spec, ws);
  return forward_pass(spec, w, x, ws);
}

double dnn_loss(const DnnSpec& spec, std::span<const double> w,
                std::span<const DataPoint> points) {
  if (points.empty()) {
    throw std::invalid_argument("dnn_loss: needs at least one point");
  }
  check_shapes(spec, w, points.front().x);
  Workspace ws;
  prepare(spec, ws);
  double total = 0.0;
  for (const DataPoint& p : points) {
    const double r = forward_pass(spec, w, p.x, ws) - p.y;
    total += r * r;
  }
  return total / static_cast<double>(points.size());
}

double dnn_loss(const DnnSpec& spec, std::span<const double> w, const Dataset& data) {
  return dnn_loss(spec, w, std::span<const DataPoint>(data.points()));
}

std::vector<double> dnn_gradient(const DnnSpec& spec, std::span<const double> w,
                                 std::span<const DataPoint> points) {
  if (points.empty()) {
    throw std::invalid_argument("dnn_gradient: needs at least one point");
  }
  check_shapes(spec, w, points.front().x);
  Workspace ws;
  prepare(spec, ws);
  std::vector<double> grad(w.size(), 0.0);
  const double scale = 2.0 / static_cast<double>(points.size());
  for (const DataPoint& p : points) {
    const double r = forward_pass(spec, w, p.x, ws) - p.y;
    backward_pass(spec, w, scale * r, grad, ws);
  }
  return grad;
}

std::vector<double> dnn_gradient(const DnnSpec& spec, std::span<const double> w,
                                 const Dataset& data) {
  return dnn_gradient(spec, w, std::span<const DataPoint>(data.points()));
}

std::vector<double> init_dnn_weights(const DnnSpec& spec, std::uint64_t seed) {
  validate(spec);
  const std::vector<int> widths = layer_widths(spec);
  std::vector<double> w(static_cast<std::size_t>(dnn_parameter_count(spec)));
  std::mt19937_64 engine(seed);
  auto unit = [&engine]() {
    return static_cast<double>(engine() >> 11) * 0x1.0p-53;
  };
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const int rows = widths[l + 1];
    const int cols = widths[l];
    const double bound = 1.0 / std::sqrt(static_cast<double>(cols));
    for (int i = 0; i < rows * cols + rows; ++i) {
      w[offset++] = bound * (2.0 * unit() - 1.0);
    }
  }
  return w;
}

TrainResult train_dnn(const DnnSpec& spec, const Dataset& data,
                      const TrainConfig& config) {
  validate(spec);
  if (!(config.learning_rate > 0.0)) {
    throw std::invalid_argument("TrainConfig: learning_rate must be positive");
  }
  if (config.max_epochs < 1 || config.plateau_patience < 1) {
    throw std::invalid_argument("TrainConfig: epochs and patience must be positive");
  }
  if (static_cast<int>(data.points().front().x.size()) != spec.n_in) {
    throw std::invalid_argument("train_dnn: dataset dimension does not match n_in");
  }

  const std::size_t n_params = static_cast<std::size_t>(dnn_parameter_count(spec));
  std::vector<double> w = init_dnn_weights(spec, config.seed);
  std::vector<double> m(n_params, 0.0);
  std::vector<double> v(n_params, 0.0);
  const double beta1 = 0.9;
  const double beta2 = 0.999;
  const double eps = 1e-8;

  Workspace ws;
  prepare(spec, ws);
  std::vector<double> grad(n_params);

  TrainResult result;
  result.weights = w;
  double best_loss = std::numeric_limits<double>::infinity();
  int stall = 0;

  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    double loss = 0.0;
    const double scale = 2.0 / static_cast<double>(data.size());
    for (const DataPoint& p : data.points()) {
      const double r = forward_pass(spec, w, p.x, ws) - p.y;
      loss += r * r;
      backward_pass(spec, w, scale * r, grad, ws);
    }
    loss /= static_cast<double>(data.size());

    result.loss_history.push_back(loss);
    result.epochs_run = epoch;
    if (!std::isfinite(loss)) {
      result.diverged = true;
      break;
    }
    if (loss < best_loss - 1e-12) {
      stall = 0;
    } else {
      ++stall;
    }
    if (loss < best_loss) {
      best_loss = loss;
      result.weights = w;
    }
    if (stall >= config.plateau_patience) break;

    const double corr1 = 1.0 - std::pow(beta1, epoch);
    const double corr2 = 1.0 - std::pow(beta2, epoch);
    for (std::size_t i = 0; i < n_params; ++i) {
      m[i] = beta1 * m[i] + (1.0 - beta1) * grad[i];
      v[i] = beta2 * v[i] + (1.0 - beta2) * grad[i] * grad[i];
      const double m_hat = m[i] / corr1;
      const double v_hat = v[i] / corr2;
      w[i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + eps);
    }
  }
  return result;
}

}  // namespace imann
