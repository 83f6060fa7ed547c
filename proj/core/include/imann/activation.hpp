#pragma once

#include <cmath>
#include <string_view>

namespace imann {

/// Hidden-layer activation. Output layers stay linear everywhere in this
/// project; only hidden units are squashed.
enum class Activation { Tanh, Sigmoid, Relu };

Activation parse_activation(std::string_view name);
std::string_view activation_name(Activation a);

inline double apply_activation(Activation a, double z) {
  switch (a) {
    case Activation::Tanh:
      return std::tanh(z);
    case Activation::Sigmoid:
      return 1.0 / (1.0 + std::exp(-z));
    case Activation::Relu:
      return z > 0.0 ? z : 0.0;
  }
  return z;
}

/// Derivative expressed through the activation value y = act(z).
inline double activation_derivative_from_value(Activation a, double y) {
  switch (a) {
    case Activation::Tanh:
      return 1.0 - y * y;
    case Activation::Sigmoid:
      return y * (1.0 - y);
    case Activation::Relu:
      return y > 0.0 ? 1.0 : 0.0;
  }
  return 1.0;
}

}  // namespace imann
