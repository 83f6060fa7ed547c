#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "imann/activation.hpp"
#include "imann/hybrid.hpp"

namespace imann {

/// Black-box dense network: squashed hidden layers, single linear output.
struct DnnSpec {
  int n_in = 1;
  std::vector<int> hidden;
  Activation hidden_activation = Activation::Tanh;
};

void validate(const DnnSpec& spec);

/// Weights plus biases of every layer (dense layout, no coupling weights).
int dnn_parameter_count(const DnnSpec& spec);

/// Parses "n_in-h1-...-hm-1"; the output width must be 1.
DnnSpec parse_dnn_architecture(std::string_view arch,
                               Activation hidden_activation = Activation::Tanh);
std::string dnn_architecture_string(const DnnSpec& spec);

/// Standard MLP forward pass with linear output. Weight layout matches the
/// network module: per layer, row-major weights then biases.
double dnn_forward(const DnnSpec& spec, std::span<const double> w,
                   std::span<const double> x);

/// Mean-squared-error training loss (1/n) * sum (prediction - y)^2. The
/// span overloads accept arbitrary point multisets (duplicates included).
double dnn_loss(const DnnSpec& spec, std::span<const double> w, const Dataset& data);
double dnn_loss(const DnnSpec& spec, std::span<const double> w,
                std::span<const DataPoint> points);

/// Exact reverse-mode gradient of dnn_loss with respect to every parameter.
std::vector<double> dnn_gradient(const DnnSpec& spec, std::span<const double> w,
                                 const Dataset& data);
std::vector<double> dnn_gradient(const DnnSpec& spec, std::span<const double> w,
                                 std::span<const DataPoint> points);

struct TrainConfig {
  double learning_rate = 1e-3;
  int max_epochs = 20000;
  int plateau_patience = 200;  // epochs of < 1e-12 improvement before stopping
  std::uint64_t seed = 0;
};

struct TrainResult {
  std::vector<double> weights;       // parameters with the lowest recorded loss
  std::vector<double> loss_history;  // one entry per epoch, before that update
  long epochs_run = 0;
  bool diverged = false;
};

/// Seeded small random initialization, uniform in +/- 1/sqrt(fan_in).
std::vector<double> init_dnn_weights(const DnnSpec& spec, std::uint64_t seed);

/// Full-batch adaptive-moment gradient descent (moment decays 0.9/0.999,
/// epsilon 1e-8). Stops at max_epochs, on a loss plateau, or on a
/// non-finite loss (diverged). Returns the weights with the lowest recorded
/// training loss.
TrainResult train_dnn(const DnnSpec& spec, const Dataset& data,
                      const TrainConfig& config);

}  // namespace imann
