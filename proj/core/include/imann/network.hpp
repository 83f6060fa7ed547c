#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "imann/activation.hpp"

namespace imann {

/// Feed-forward architecture whose last trainable layer emits one value per
/// delegated model subfunction. Hidden layers are squashed; the subfunction
/// layer is affine, and each of its outputs is multiplied by a dedicated
/// scalar coupling weight before entering the model.
struct NetworkSpec {
  int n_in = 1;
  std::vector<int> hidden;  // at least one hidden layer
  int n_out = 1;            // = number of subfunctions
  Activation hidden_activation = Activation::Tanh;
};

/// Throws std::invalid_argument on empty hidden stack or non-positive widths.
void validate(const NetworkSpec& spec);

/// Total number of trainable reals:
/// n_in*n1 + sum n_{i-1}*n_i + n_m*n_out + sum n_i + 2*n_out
/// (hidden weights, output weights, hidden biases, output biases plus the
/// per-output coupling weights). This is the search-space dimension.
int dimensionality(const NetworkSpec& spec);

/// Flat vector layout. Layer by layer: weight matrix row-major with the
/// destination neuron as the row index, then that layer's biases. The final
/// segment holds the n_out output biases followed by the n_out coupling
/// weights.
struct WeightLayout {
  struct Block {
    int weights;  // offset of the row-major weight matrix
    int biases;   // offset of the bias vector
    int rows;
    int cols;
  };
  std::vector<Block> layers;  // hidden layers then the output layer
  int couplings = 0;          // offset of the n_out coupling weights
  int total = 0;
};

WeightLayout pack_layout(const NetworkSpec& spec);

/// Structured view of a flat weight vector; pack(unpack(w)) == w.
struct UnpackedWeights {
  std::vector<std::vector<double>> weights;  // row-major, one per layer
  std::vector<std::vector<double>> biases;   // one per layer
  std::vector<double> couplings;             // n_out scalars
};

UnpackedWeights unpack(const NetworkSpec& spec, std::span<const double> w);
std::vector<double> pack(const NetworkSpec& spec, const UnpackedWeights& u);

/// Reusable scratch for forward passes in hot loops.
struct ForwardScratch {
  std::vector<double> a;
  std::vector<double> b;
};

/// Subfunction values for input x: hidden layers apply affine map plus
/// activation, the output layer is affine, and output j is scaled by its
/// coupling weight. Deterministic; throws EvaluationError if any output is
/// non-finite.
std::vector<double> forward(const NetworkSpec& spec, std::span<const double> w,
                            std::span<const double> x);

/// As forward(), writing into out (size n_out) and reusing scratch.
void forward_into(const NetworkSpec& spec, std::span<const double> w,
                  std::span<const double> x, std::span<double> out,
                  ForwardScratch& scratch);

/// Hot-loop variant with a precomputed layout (layout must come from
/// pack_layout(spec)).
void forward_into(const NetworkSpec& spec, const WeightLayout& layout,
                  std::span<const double> w, std::span<const double> x,
                  std::span<double> out, ForwardScratch& scratch);

/// Parses "n_in-h1-...-hm-n_out" (e.g. "1-5-5-1").
NetworkSpec parse_architecture(std::string_view arch,
                               Activation hidden_activation = Activation::Tanh);

/// Inverse of parse_architecture.
std::string architecture_string(const NetworkSpec& spec);

}  // namespace imann
