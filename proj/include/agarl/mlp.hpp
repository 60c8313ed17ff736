#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "agarl/rng.hpp"

namespace agarl {

enum class Activation { linear, logistic, relu };

/// Glorot-uniform weight matrix, row-major out x in. Entries are drawn from
/// U[-sqrt(6/(in+out)), +sqrt(6/(in+out))].
std::vector<double> init_glorot(int in, int out, Rng& rng);

/// Dense feed-forward network. Hidden layers use ReLU; the output layer is
/// linear (critics, unbounded values) or logistic (actors, components in
/// (0,1)). When action_inject_layer >= 0, an auxiliary action vector is
/// concatenated to that layer's input, so that layer's `in` width includes
/// action_dim extra columns.
struct Mlp {
  struct Layer {
    int in = 0;
    int out = 0;
    std::vector<double> w;  // row-major, out x in
    std::vector<double> b;  // out
  };

  std::vector<Layer> layers;
  Activation hidden_activation = Activation::relu;
  Activation output_activation = Activation::linear;
  int action_inject_layer = -1;
  int action_dim = 0;

  int input_dim() const;
  int output_dim() const { return layers.back().out; }
  std::size_t parameter_count() const;
};

/// Builds a network with Glorot-uniform weights and zero biases.
/// hidden = widths of the hidden layers, in order.
Mlp make_mlp(int input_dim, const std::vector<int>& hidden, int output_dim,
             Activation output_activation, Rng& rng, int action_inject_layer = -1,
             int action_dim = 0);

/// Everything backward() needs: the (possibly action-extended) input of each
/// layer and each layer's pre-activation values.
struct ForwardTrace {
  std::vector<std::vector<double>> inputs;
  std::vector<std::vector<double>> pre;
  std::vector<double> output;
};

/// Runs the network. `action` must be supplied iff action injection is
/// configured. Returns the post-activation output (also kept in the trace).
const std::vector<double>& forward(const Mlp& net, std::span<const double> input,
                                   std::span<const double> action, ForwardTrace& trace);
std::vector<double> forward(const Mlp& net, std::span<const double> input,
                            std::span<const double> action = {});

struct Gradients {
  std::vector<std::vector<double>> dw;
  std::vector<std::vector<double>> db;
  std::vector<double> dinput;
  std::vector<double> daction;

  void init(const Mlp& net);
  void zero();
};

/// Accumulates the gradients of 0.5 * sample_weight * |output_error|^2 into
/// `into`, where output_error = d(loss)/d(output) at the post-activation
/// output (for squared error: prediction - target). The trace must come from
/// forward() on the same parameters.
void backward(const Mlp& net, const ForwardTrace& trace, std::span<const double> output_error,
              double sample_weight, Gradients& into);
Gradients backward(const Mlp& net, const ForwardTrace& trace,
                   std::span<const double> output_error, double sample_weight = 1.0);

/// Adds lambda * W to every weight gradient (L2 decay; biases untouched).
void add_l2_decay(const Mlp& net, double lambda, Gradients& grads);

struct AdamState {
  std::vector<std::vector<double>> mw, vw, mb, vb;
  long step = 0;
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  static AdamState for_net(const Mlp& net, double lr);
};

/// One Adam update with bias correction; increments the step counter.
void adam_step(Mlp& net, const Gradients& grads, AdamState& state);

/// target <- tau * source + (1 - tau) * target, elementwise.
/// Architectures must match; tau must lie in [0, 1].
void soft_update(Mlp& target, const Mlp& source, double tau);

/// Gradient of the summed network output with respect to the injected action
/// input. The critic must have action injection configured.
std::vector<double> action_gradient(const Mlp& critic, std::span<const double> state,
                                    std::span<const double> action);

/// Binary checkpoint: header (layer count, shapes, activation tags, injection
/// config) followed by row-major little-endian f64 weights then biases, in
/// layer order. Byte-exact round-trip.
void save_mlp(const Mlp& net, std::ostream& out);
Mlp load_mlp(std::istream& in);

}  // namespace agarl
