#include "agarl/mlp.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>

#include "agarl/errors.hpp"
#include "agarl/kernels.hpp"

namespace agarl {

namespace {

double apply_act(Activation a, double z) {
  switch (a) {
    case Activation::linear: return z;
    case Activation::logistic: return 1.0 / (1.0 + std::exp(-z));
    case Activation::relu: return z > 0.0 ? z : 0.0;
  }
  return z;
}

// Derivative expressed through the pre-activation z.
double act_deriv(Activation a, double z) {
  switch (a) {
    case Activation::linear: return 1.0;
    case Activation::logistic: {
      const double s = 1.0 / (1.0 + std::exp(-z));
      return s * (1.0 - s);
    }
    case Activation::relu: return z > 0.0 ? 1.0 : 0.0;
  }
  return 1.0;
}

}  // namespace

std::vector<double> init_glorot(int in, int out, Rng& rng) {
  if (in < 1 || out < 1) throw shape_error("glorot init needs positive dimensions");
  const double bound = std::sqrt(6.0 / (in + out));
  std::vector<double> w(static_cast<std::size_t>(in) * out);
  for (double& x : w) x = rng.uniform(-bound, bound);
  return w;
}

int Mlp::input_dim() const {
  int in = layers.front().in;
  if (action_inject_layer == 0) in -= action_dim;
  return in;
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const Layer& l : layers) n += l.w.size() + l.b.size();
  return n;
}

Mlp make_mlp(int input_dim, const std::vector<int>& hidden, int output_dim,
             Activation output_activation, Rng& rng, int action_inject_layer, int action_dim) {
  const int n_layers = static_cast<int>(hidden.size()) + 1;
  if (action_inject_layer >= n_layers)
    throw shape_error("action injection layer beyond last layer");
  if ((action_inject_layer >= 0) != (action_dim > 0))
    throw shape_error("action injection needs a positive action width");

  Mlp net;
  net.output_activation = output_activation;
  net.action_inject_layer = action_inject_layer;
  net.action_dim = action_dim > 0 ? action_dim : 0;

  int prev = input_dim;
  for (int k = 0; k < n_layers; ++k) {
    const int out = k < static_cast<int>(hidden.size()) ? hidden[k] : output_dim;
    int in = prev;
    if (k == action_inject_layer) in += action_dim;
    Mlp::Layer layer;
    layer.in = in;
    layer.out = out;
    layer.w = init_glorot(in, out, rng);
    layer.b.assign(out, 0.0);
    net.layers.push_back(std::move(layer));
    prev = out;
  }
  return net;
}

const std::vector<double>& forward(const Mlp& net, std::span<const double> input,
                                   std::span<const double> action, ForwardTrace& trace) {
  const bool inject = net.action_inject_layer >= 0;
  if (inject != !action.empty())
    throw shape_error("action must be supplied exactly when injection is configured");
  if (inject && static_cast<int>(action.size()) != net.action_dim)
    throw shape_error("action width mismatch");
  if (static_cast<int>(input.size()) != net.input_dim()) throw shape_error("input width mismatch");

  const std::size_t n_layers = net.layers.size();
  trace.inputs.resize(n_layers);
  trace.pre.resize(n_layers);

  std::vector<double> cur(input.begin(), input.end());
  for (std::size_t k = 0; k < n_layers; ++k) {
    const Mlp::Layer& layer = net.layers[k];
    std::vector<double>& layer_in = trace.inputs[k];
    layer_in = std::move(cur);
    if (static_cast<int>(k) == net.action_inject_layer)
      layer_in.insert(layer_in.end(), action.begin(), action.end());
    if (static_cast<int>(layer_in.size()) != layer.in)
      throw shape_error("layer input width mismatch");

    std::vector<double>& z = trace.pre[k];
    z.resize(layer.out);
    const double* w = layer.w.data();
    for (int r = 0; r < layer.out; ++r)
      z[r] = kernels::dot(w + static_cast<std::size_t>(r) * layer.in, layer_in.data(), layer.in) +
             layer.b[r];

    const Activation act =
        k + 1 == n_layers ? net.output_activation : net.hidden_activation;
    cur.resize(layer.out);
    for (int r = 0; r < layer.out; ++r) cur[r] = apply_act(act, z[r]);
  }
  trace.output = std::move(cur);
  return trace.output;
}

std::vector<double> forward(const Mlp& net, std::span<const double> input,
                            std::span<const double> action) {
  ForwardTrace trace;
  forward(net, input, action, trace);
  return std::move(trace.output);
}

void Gradients::init(const Mlp& net) {
  dw.resize(net.layers.size());
  db.resize(net.layers.size());
  for (std::size_t k = 0; k < net.layers.size(); ++k) {
    dw[k].assign(net.layers[k].w.size(), 0.0);
    db[k].assign(net.layers[k].b.size(), 0.0);
  }
  dinput.assign(net.input_dim(), 0.0);
  daction.assign(net.action_dim, 0.0);
}

void Gradients::zero() {
  for (auto& g : dw) std::fill(g.begin(), g.end(), 0.0);
  for (auto& g : db) std::fill(g.begin(), g.end(), 0.0);
  std::fill(dinput.begin(), dinput.end(), 0.0);
  std::fill(daction.begin(), daction.end(), 0.0);
}

void backward(const Mlp& net, const ForwardTrace& trace, std::span<const double> output_error,
              double sample_weight, Gradients& into) {
  const std::size_t n_layers = net.layers.size();
  if (trace.inputs.size() != n_layers || trace.pre.size() != n_layers)
    throw shape_error("trace does not match network depth");
  if (static_cast<int>(output_error.size()) != net.output_dim())
    throw shape_error("output error width mismatch");
  if (into.dw.size() != n_layers) throw shape_error("gradient accumulator not initialized");

  // Delta at the output layer: weighted error through the output activation.
  std::vector<double> delta(output_error.size());
  for (std::size_t i = 0; i < delta.size(); ++i)
    delta[i] = sample_weight * output_error[i] * act_deriv(net.output_activation, trace.pre.back()[i]);

  for (std::size_t k = n_layers; k-- > 0;) {
    const Mlp::Layer& layer = net.layers[k];
    const std::vector<double>& layer_in = trace.inputs[k];
    if (static_cast<int>(layer_in.size()) != layer.in ||
        static_cast<int>(trace.pre[k].size()) != layer.out ||
        static_cast<int>(delta.size()) != layer.out)
      throw shape_error("stale trace");

    double* dw = into.dw[k].data();
    for (int r = 0; r < layer.out; ++r) {
      into.db[k][r] += delta[r];
      kernels::axpy(delta[r], layer_in.data(), dw + static_cast<std::size_t>(r) * layer.in,
                    layer.in);
    }

    // Gradient with respect to this layer's input: W^T delta.
    std::vector<double> gin(layer.in, 0.0);
    const double* w = layer.w.data();
    for (int r = 0; r < layer.out; ++r)
      kernels::axpy(delta[r], w + static_cast<std::size_t>(r) * layer.in, gin.data(), layer.in);

    int carry = layer.in;
    if (static_cast<int>(k) == net.action_inject_layer) {
      carry -= net.action_dim;
      for (int i = 0; i < net.action_dim; ++i) into.daction[i] += gin[carry + i];
    }

    if (k == 0) {
      for (int i = 0; i < carry; ++i) into.dinput[i] += gin[i];
    } else {
      delta.assign(gin.begin(), gin.begin() + carry);
      const std::vector<double>& prev_z = trace.pre[k - 1];
      for (int i = 0; i < carry; ++i) delta[i] *= act_deriv(net.hidden_activation, prev_z[i]);
    }
  }
}

Gradients backward(const Mlp& net, const ForwardTrace& trace,
                   std::span<const double> output_error, double sample_weight) {
  Gradients g;
  g.init(net);
  backward(net, trace, output_error, sample_weight, g);
  return g;
}

void add_l2_decay(const Mlp& net, double lambda, Gradients& grads) {
  if (lambda == 0.0) return;
  for (std::size_t k = 0; k < net.layers.size(); ++k)
    kernels::axpy(lambda, net.layers[k].w.data(), grads.dw[k].data(), net.layers[k].w.size());
}

AdamState AdamState::for_net(const Mlp& net, double lr_) {
  AdamState s;
  s.lr = lr_;
  s.mw.resize(net.layers.size());
  s.vw.resize(net.layers.size());
  s.mb.resize(net.layers.size());
  s.vb.resize(net.layers.size());
  for (std::size_t k = 0; k < net.layers.size(); ++k) {
    s.mw[k].assign(net.layers[k].w.size(), 0.0);
    s.vw[k].assign(net.layers[k].w.size(), 0.0);
    s.mb[k].assign(net.layers[k].b.size(), 0.0);
    s.vb[k].assign(net.layers[k].b.size(), 0.0);
  }
  return s;
}

void adam_step(Mlp& net, const Gradients& grads, AdamState& state) {
  if (state.mw.size() != net.layers.size() || grads.dw.size() != net.layers.size())
    throw shape_error("adam state does not match network");
  state.step += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
  for (std::size_t k = 0; k < net.layers.size(); ++k) {
    Mlp::Layer& layer = net.layers[k];
    if (grads.dw[k].size() != layer.w.size() || grads.db[k].size() != layer.b.size())
      throw shape_error("gradient shapes do not match network");
    kernels::adam_elem(layer.w.data(), grads.dw[k].data(), state.mw[k].data(), state.vw[k].data(),
                       layer.w.size(), state.lr, state.beta1, state.beta2, state.eps, bc1, bc2);
    kernels::adam_elem(layer.b.data(), grads.db[k].data(), state.mb[k].data(), state.vb[k].data(),
                       layer.b.size(), state.lr, state.beta1, state.beta2, state.eps, bc1, bc2);
  }
}

void soft_update(Mlp& target, const Mlp& source, double tau) {
  if (tau < 0.0 || tau > 1.0) throw param_error("tau must lie in [0, 1]");
  if (target.layers.size() != source.layers.size()) throw shape_error("architecture mismatch");
  for (std::size_t k = 0; k < target.layers.size(); ++k) {
    Mlp::Layer& t = target.layers[k];
    const Mlp::Layer& s = source.layers[k];
    if (t.in != s.in || t.out != s.out) throw shape_error("architecture mismatch");
    kernels::lerp(tau, s.w.data(), t.w.data(), t.w.size());
    kernels::lerp(tau, s.b.data(), t.b.data(), t.b.size());
  }
}

std::vector<double> action_gradient(const Mlp& critic, std::span<const double> state,
                                    std::span<const double> action) {
  if (critic.action_inject_layer < 0)
    throw unsupported_error("action gradient needs a critic with action injection");
  ForwardTrace trace;
  forward(critic, state, action, trace);
  // Gradient of the summed output: backward with unit error and weight 1.
  std::vector<double> ones(critic.output_dim(), 1.0);
  Gradients g = backward(critic, trace, ones, 1.0);
  return std::move(g.daction);
}

namespace {

void write_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16), static_cast<unsigned char>(v >> 24)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

void write_i32(std::ostream& out, std::int32_t v) { write_u32(out, static_cast<std::uint32_t>(v)); }

void write_f64(std::ostream& out, const double* data, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t bits;
    std::memcpy(&bits, data + i, 8);
    unsigned char b[8];
    for (int j = 0; j < 8; ++j) b[j] = static_cast<unsigned char>(bits >> (8 * j));
    out.write(reinterpret_cast<const char*>(b), 8);
  }
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw format_error("truncated checkpoint header");
  return static_cast<std::uint32_t>(b[0]) | static_cast<std::uint32_t>(b[1]) << 8 |
         static_cast<std::uint32_t>(b[2]) << 16 | static_cast<std::uint32_t>(b[3]) << 24;
}

std::int32_t read_i32(std::istream& in) { return static_cast<std::int32_t>(read_u32(in)); }

void read_f64(std::istream& in, double* data, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw format_error("truncated checkpoint payload");
    std::uint64_t bits = 0;
    for (int j = 0; j < 8; ++j) bits |= static_cast<std::uint64_t>(b[j]) << (8 * j);
    std::memcpy(data + i, &bits, 8);
  }
}

constexpr std::uint32_t kMlpMagic = 0x504c4d41;  // "AMLP"

std::uint32_t act_tag(Activation a) {
  switch (a) {
    case Activation::linear: return 0;
    case Activation::logistic: return 1;
    case Activation::relu: return 2;
  }
  return 0;
}

Activation act_from_tag(std::uint32_t t) {
  switch (t) {
    case 0: return Activation::linear;
    case 1: return Activation::logistic;
    case 2: return Activation::relu;
  }
  throw format_error("unknown activation tag");
}

}  // namespace

void save_mlp(const Mlp& net, std::ostream& out) {
  write_u32(out, kMlpMagic);
  write_u32(out, static_cast<std::uint32_t>(net.layers.size()));
  write_u32(out, act_tag(net.hidden_activation));
  write_u32(out, act_tag(net.output_activation));
  write_i32(out, net.action_inject_layer);
  write_i32(out, net.action_dim);
  for (const Mlp::Layer& l : net.layers) {
    write_i32(out, l.in);
    write_i32(out, l.out);
  }
  for (const Mlp::Layer& l : net.layers) {
    write_f64(out, l.w.data(), l.w.size());
    write_f64(out, l.b.data(), l.b.size());
  }
  if (!out) throw io_error("failed to write network checkpoint");
}

Mlp load_mlp(std::istream& in) {
  if (read_u32(in) != kMlpMagic) throw format_error("not a network checkpoint");
  const std::uint32_t n_layers = read_u32(in);
  if (n_layers == 0 || n_layers > 1024) throw format_error("implausible layer count");
  Mlp net;
  net.hidden_activation = act_from_tag(read_u32(in));
  net.output_activation = act_from_tag(read_u32(in));
  net.action_inject_layer = read_i32(in);
  net.action_dim = read_i32(in);
  if (net.action_dim < 0 || net.action_inject_layer >= static_cast<int>(n_layers))
    throw format_error("bad injection config");
  net.layers.resize(n_layers);
  for (Mlp::Layer& l : net.layers) {
    l.in = read_i32(in);
    l.out = read_i32(in);
    if (l.in < 1 || l.out < 1) throw format_error("bad layer shape");
  }
  for (std::size_t k = 1; k < n_layers; ++k) {
    int expected = net.layers[k - 1].out;
    if (static_cast<int>(k) == net.action_inject_layer) expected += net.action_dim;
    if (net.layers[k].in != expected) throw format_error("incompatible adjacent layer shapes");
  }
  for (Mlp::Layer& l : net.layers) {
    l.w.resize(static_cast<std::size_t>(l.in) * l.out);
    l.b.resize(l.out);
    read_f64(in, l.w.data(), l.w.size());
    read_f64(in, l.b.data(), l.b.size());
  }
  return net;
}

}  // namespace agarl
