#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "agarl/rng.hpp"

namespace agarl {

/// One experience record. Continuous agents use `action` (components in
/// [0,1]); Q-learning uses `action_index` and leaves `action` at the grid
/// centre it maps to. Rewards are already summed over skipped frames.
struct Transition {
  std::vector<double> state;
  std::array<double, 2> action{0.5, 0.5};
  int action_index = -1;
  double reward = 0.0;
  std::vector<double> next_state;
  bool terminal = false;
};

/// Binary sum tree over priority^alpha, leaves at [cap2, 2*cap2).
class SumTree {
 public:
  explicit SumTree(std::size_t capacity);

  void set(std::size_t i, double value);
  double get(std::size_t i) const { return nodes_[cap2_ + i]; }
  double total() const { return nodes_[1]; }

  /// Descends the tree to the leaf whose cumulative range contains `mass`
  /// (0 <= mass < total). Leaves holding zero weight are never returned.
  std::size_t find(double mass) const;

  std::size_t leaf_capacity() const { return cap2_; }

 private:
  std::size_t cap2_;
  std::vector<double> nodes_;
};

/// Proportional prioritized replay over a FIFO ring. New transitions enter
/// at the running max priority (floored at eps) so each is sampled at least
/// once; when full, the oldest slot is overwritten.
class ReplayBuffer {
 public:
  struct Sample {
    std::vector<std::size_t> indices;
    std::vector<double> is_weights;  // max-normalized, max == 1
  };

  ReplayBuffer(std::size_t capacity, double alpha, double priority_eps = 1e-6);

  /// Stores a transition and returns its slot index.
  std::size_t push(Transition t);

  /// Draws n indices via stratified sum-tree descent, probabilities
  /// proportional to priority^alpha. When `literal_is_weights` is set, the
  /// weight base is the raw priority instead of the sampling probability.
  Sample sample(std::size_t n, double beta, Rng& rng, bool literal_is_weights = false) const;

  /// priority_i <- |tde_i| + eps, leaf values and ancestors refreshed.
  void update_priorities(const std::vector<std::size_t>& indices,
                         const std::vector<double>& tde_values);

  /// Replaces the stored action of one transition; everything else is kept.
  void overwrite_action(std::size_t index, const std::array<double, 2>& action);

  const Transition& operator[](std::size_t i) const;

  std::size_t size() const { return size_; }
  std::size_t capacity() const { return capacity_; }
  double alpha() const { return alpha_; }
  double priority(std::size_t i) const;
  double priority_sum_alpha() const { return tree_.total(); }
  double max_priority() const { return max_priority_; }

 private:
  void check_index(std::size_t i) const;

  std::size_t capacity_;
  double alpha_;
  double eps_;
  std::vector<Transition> storage_;
  std::vector<double> priorities_;
  SumTree tree_;
  std::size_t next_ = 0;
  std::size_t size_ = 0;
  double max_priority_ = 0.0;
};

}  // namespace agarl
