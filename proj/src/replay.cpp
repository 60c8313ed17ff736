#include "agarl/replay.hpp"

#include <algorithm>
#include <cmath>

#include "agarl/errors.hpp"

namespace agarl {

SumTree::SumTree(std::size_t capacity) {
  cap2_ = 1;
  while (cap2_ < capacity) cap2_ <<= 1;
  nodes_.assign(2 * cap2_, 0.0);
}

void SumTree::set(std::size_t i, double value) {
  std::size_t node = cap2_ + i;
  nodes_[node] = value;
  for (node >>= 1; node >= 1; node >>= 1)
    nodes_[node] = nodes_[2 * node] + nodes_[2 * node + 1];
}

std::size_t SumTree::find(double mass) const {
  std::size_t node = 1;
  while (node < cap2_) {
    const double left = nodes_[2 * node];
    if (mass < left) {
      node = 2 * node;
    } else {
      mass -= left;
      node = 2 * node + 1;
    }
  }
  // Floating point can push the residual onto a zero-weight leaf at the
  // right edge; walk back onto stored mass.
  std::size_t i = node - cap2_;
  while (i > 0 && nodes_[cap2_ + i] <= 0.0) --i;
  return i;
}

ReplayBuffer::ReplayBuffer(std::size_t capacity, double alpha, double priority_eps)
    : capacity_(capacity), alpha_(alpha), eps_(priority_eps), tree_(capacity) {
  if (capacity_ < 1) throw param_error("replay capacity must be at least 1");
  if (alpha_ < 0.0) throw param_error("alpha must be non-negative");
  if (eps_ <= 0.0) throw param_error("priority floor must be positive");
  storage_.resize(capacity_);
  priorities_.assign(capacity_, 0.0);
}

std::size_t ReplayBuffer::push(Transition t) {
  const std::size_t i = next_;
  storage_[i] = std::move(t);
  const double p = std::max(max_priority_, eps_);
  priorities_[i] = p;
  max_priority_ = std::max(max_priority_, p);
  tree_.set(i, std::pow(p, alpha_));
  next_ = (next_ + 1) % capacity_;
  size_ = std::min(size_ + 1, capacity_);
  return i;
}

ReplayBuffer::Sample ReplayBuffer::sample(std::size_t n, double beta, Rng& rng,
                                          bool literal_is_weights) const {
  if (size_ == 0) throw empty_error("cannot sample from an empty replay buffer");
  if (n < 1) throw param_error("sample size must be at least 1");

  Sample s;
  s.indices.resize(n);
  s.is_weights.resize(n);
  const double total = tree_.total();
  const double segment = total / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    double mass = (static_cast<double>(k) + rng.uniform()) * segment;
    if (mass >= total) mass = std::nextafter(total, 0.0);
    std::size_t i = tree_.find(mass);
    if (i >= size_) i = size_ - 1;
    s.indices[k] = i;
    const double prob = tree_.get(i) / total;
    const double base = literal_is_weights ? priorities_[i] * static_cast<double>(size_)
                                           : prob * static_cast<double>(size_);
    s.is_weights[k] = std::pow(1.0 / base, beta);
  }
  const double wmax = *std::max_element(s.is_weights.begin(), s.is_weights.end());
  for (double& w : s.is_weights) w /= wmax;
  return s;
}

void ReplayBuffer::update_priorities(const std::vector<std::size_t>& indices,
                                     const std::vector<double>& tde_values) {
  if (indices.size() != tde_values.size())
    throw param_error("indices and TDE values must pair up");
  for (std::size_t k = 0; k < indices.size(); ++k) {
    check_index(indices[k]);
    const double p = std::abs(tde_values[k]) + eps_;
    priorities_[indices[k]] = p;
    max_priority_ = std::max(max_priority_, p);
    tree_.set(indices[k], std::pow(p, alpha_));
  }
}

void ReplayBuffer::overwrite_action(std::size_t index, const std::array<double, 2>& action) {
  check_index(index);
  storage_[index].action = action;
}

const Transition& ReplayBuffer::operator[](std::size_t i) const {
  check_index(i);
  return storage_[i];
}

double ReplayBuffer::priority(std::size_t i) const {
  check_index(i);
  return priorities_[i];
}

void ReplayBuffer::check_index(std::size_t i) const {
  if (i >= size_) throw index_error("replay index out of range");
}

}  // namespace agarl
