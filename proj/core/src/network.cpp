#include "imann/network.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "imann/errors.hpp"

namespace imann {

Activation parse_activation(std::string_view name) {
  if (name == "tanh") return Activation::Tanh;
  if (name == "sigmoid") return Activation::Sigmoid;
  if (name == "relu") return Activation::Relu;
  throw std::invalid_argument("parse_activation: unknown activation '" +
                              std::string(name) + "'");
}

std::string_view activation_name(Activation a) {
  switch (a) {
    case Activation::Tanh:
      return "tanh";
    case Activation::Sigmoid:
      return "sigmoid";
    case Activation::Relu:
      return "relu";
  }
  return "tanh";
}

void validate(const NetworkSpec& spec) {
  if (spec.n_in < 1 || spec.n_out < 1) {
    throw std::invalid_argument("NetworkSpec: n_in and n_out must be positive");
  }
  if (spec.hidden.empty()) {
    throw std::invalid_argument("NetworkSpec: needs at least one hidden layer");
  }
  for (int h : spec.hidden) {
    if (h < 1) throw std::invalid_argument("NetworkSpec: hidden widths must be positive");
  }
}

int dimensionality(const NetworkSpec& spec) {
  validate(spec);
  int d = spec.n_in * spec.hidden.front();
  for (std::size_t i = 1; i < spec.hidden.size(); ++i) {
    d += spec.hidden[i - 1] * spec.hidden[i];
  }
  d += spec.hidden.back() * spec.n_out;
  for (int h : spec.hidden) d += h;
  d += 2 * spec.n_out;
  return d;
}

WeightLayout pack_layout(const NetworkSpec& spec) {
  validate(spec);
  WeightLayout layout;
  int offset = 0;
  int prev = spec.n_in;
  for (int h : spec.hidden) {
    layout.layers.push_back({offset, offset + prev * h, h, prev});
    offset += prev * h + h;
    prev = h;
  }
  // Output layer: weights, then biases, then the coupling weights.
  layout.layers.push_back({offset, offset + prev * spec.n_out, spec.n_out, prev});
  offset += prev * spec.n_out + spec.n_out;
  layout.couplings = offset;
  layout.total = offset + spec.n_out;
  return layout;
}

UnpackedWeights unpack(const NetworkSpec& spec, std::span<const double> w) {
  const WeightLayout layout = pack_layout(spec);
  if (static_cast<int>(w.size()) != layout.total) {
    throw std::invalid_argument("unpack: weight vector length " +
                                std::to_string(w.size()) + ", expected " +
                                std::to_string(layout.total));
  }
  UnpackedWeights u;
  for (const WeightLayout::Block& blk : layout.layers) {
    u.weights.emplace_back(w.begin() + blk.weights,
                           w.begin() + blk.weights + blk.rows * blk.cols);
    u.biases.emplace_back(w.begin() + blk.biases, w.begin() + blk.biases + blk.rows);
  }
  u.couplings.assign(w.begin() + layout.couplings, w.end());
  return u;
}

std::vector<double> pack(const NetworkSpec& spec, const UnpackedWeights& u) {
  const WeightLayout layout = pack_layout(spec);
  if (u.weights.size() != layout.layers.size() ||
      u.biases.size() != layout.layers.size() ||
      static_cast<int>(u.couplings.size()) != spec.n_out) {
    throw std::invalid_argument("pack: structure does not match the spec");
  }
  std::vector<double> w(static_cast<std::size_t>(layout.total));
  for (std::size_t l = 0; l < layout.layers.size(); ++l) {
    const WeightLayout::Block& blk = layout.layers[l];
    if (static_cast<int>(u.weights[l].size()) != blk.rows * blk.cols ||
        static_cast<int>(u.biases[l].size()) != blk.rows) {
      throw std::invalid_argument("pack: layer " + std::to_string(l) +
                                  " has the wrong shape");
    }
    std::copy(u.weights[l].begin(), u.weights[l].end(), w.begin() + blk.weights);
    std::copy(u.biases[l].begin(), u.biases[l].end(), w.begin() + blk.biases);
  }
  std::copy(u.couplings.begin(), u.couplings.end(), w.begin() + layout.couplings);
  return w;
}

void forward_into(const NetworkSpec& spec, std::span<const double> w,
                  std::span<const double> x, std::span<double> out,
                  ForwardScratch& scratch) {
  forward_into(spec, pack_layout(spec), w, x, out, scratch);
}

void forward_into(const NetworkSpec& spec, const WeightLayout& layout,
                  std::span<const double> w, std::span<const double> x,
                  std::span<double> out, ForwardScratch& scratch) {
  if (static_cast<int>(x.size()) != spec.n_in) {
    throw std::invalid_argument("forward: input has wrong dimension");
  }
  if (static_cast<int>(w.size()) != layout.total) {
    throw std::invalid_argument("forward: weight vector has wrong length");
  }
  if (static_cast<int>(out.size()) != spec.n_out) {
    throw std::invalid_argument("forward: output span has wrong length");
  }

  scratch.a.assign(x.begin(), x.end());
  std::vector<double>* cur = &scratch.a;
  std::vector<double>* next = &scratch.b;

  const std::size_t n_hidden = spec.hidden.size();
  for (std::size_t l = 0; l < n_hidden; ++l) {
    const WeightLayout::Block& blk = layout.layers[l];
    next->resize(static_cast<std::size_t>(blk.rows));
    for (int r = 0; r < blk.rows; ++r) {
      double z = w[static_cast<std::size_t>(blk.biases + r)];
      const double* row = w.data() + blk.weights + r * blk.cols;
      for (int c = 0; c < blk.cols; ++c) z += row[c] * (*cur)[static_cast<std::size_t>(c)];
      (*next)[static_cast<std::size_t>(r)] = apply_activation(spec.hidden_activation, z);
    }
    std::swap(cur, next);
  }

  // Output layer is affine; each value then picks up its coupling weight.
  const WeightLayout::Block& blk = layout.layers.back();
  for (int r = 0; r < blk.rows; ++r) {
    double z = w[static_cast<std::size_t>(blk.biases + r)];
    const double* row = w.data() + blk.weights + r * blk.cols;
    for (int c = 0; c < blk.cols; ++c) z += row[c] * (*cur)[static_cast<std::size_t>(c)];
    out[static_cast<std::size_t>(r)] =
        w[static_cast<std::size_t>(layout.couplings + r)] * z;
  }
  for (double s : out) {
    if (!std::isfinite(s)) {
      throw EvaluationError("forward: non-finite subfunction value");
    }
  }
}

std::vector<double> forward(const NetworkSpec& spec, std::span<const double> w,
                            std::span<const double> x) {
  std::vector<double> out(static_cast<std::size_t>(spec.n_out));
  ForwardScratch scratch;
  forward_into(spec, w, x, out, scratch);
  return out;
}

NetworkSpec parse_architecture(std::string_view arch, Activation hidden_activation) {
  std::vector<int> widths;
  std::size_t pos = 0;
  while (pos <= arch.size()) {
    const std::size_t dash = arch.find('-', pos);
    const std::string_view part =
        arch.substr(pos, dash == std::string_view::npos ? arch.size() - pos : dash - pos);
    if (part.empty()) {
      throw std::invalid_argument("parse_architecture: malformed '" +
                                  std::string(arch) + "'");
    }
    int value = 0;
    for (char ch : part) {
      if (ch < '0' || ch > '9') {
        throw std::invalid_argument("parse_architecture: malformed '" +
                                    std::string(arch) + "'");
      }
      value = value * 10 + (ch - '0');
    }
    widths.push_back(value);
    if (dash == std::string_view::npos) break;
    pos = dash + 1;
  }
  if (widths.size() < 3) {
    throw std::invalid_argument(
        "parse_architecture: need input, at least one hidden, and output width");
  }
  NetworkSpec spec;
  spec.n_in = widths.front();
  spec.n_out = widths.back();
  spec.hidden.assign(widths.begin() + 1, widths.end() - 1);
  spec.hidden_activation = hidden_activation;
  validate(spec);
  return spec;
}

std::string architecture_string(const NetworkSpec& spec) {
  std::string s = std::to_string(spec.n_in);
  for (int h : spec.hidden) s += "-" + std::to_string(h);
  s += "-" + std::to_string(spec.n_out);
  return s;
}

}  // namespace imann
