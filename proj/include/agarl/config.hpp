#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace agarl {

enum class AgentKind { qlearning, cacla, cacla_var, dpg, spg };
enum class EnvKind { pellet, selfplay };

std::string to_string(AgentKind k);
std::string to_string(EnvKind e);
AgentKind agent_kind_from_string(const std::string& s);
EnvKind env_kind_from_string(const std::string& s);

/// Every tunable of the lab, loadable from a `key = value` file. Field names
/// mirror the config keys. Defaults reproduce the reference training setup.
struct ExperimentConfig {
  // Run structure
  std::string agent = "qlearning";
  std::string environment = "pellet";
  long total_training_steps = 500000;
  int frame_skip_rate = 10;
  long reset_environment_after = 20000;  // game steps
  std::uint64_t seed = 1;

  // Core learning
  double discount_factor = 0.85;
  int training_batch_length = 32;
  double exploration_noise_start = 1.0;
  double exploration_noise_end = 0.0004;

  // Prioritized experience replay
  double prioritized_experience_replay_alpha = 0.6;
  double prioritized_experience_replay_beta = 0.4;
  long prioritized_experience_replay_capacity = 75000;
  bool per_literal_is_weights = false;

  // Q-learning
  long q_learning_steps_between_target_network_updates = 1500;
  int q_learning_hidden_layers = 3;
  int q_learning_neurons_per_hidden_layer = 256;
  double q_learning_learning_rate = 0.0001;
  double q_learning_std_of_noise_at_training_end = 0.0004;  // epsilon endpoint
  int q_learning_number_of_actions_per_side = 5;

  // Actor-critic shared shape
  int actor_critic_hidden_layers = 3;
  int actor_critic_critic_neurons_per_hidden_layer = 250;
  int actor_critic_actor_neurons_per_hidden_layer = 100;

  // CACLA
  double cacla_target_network_tau = 0.02;
  double cacla_actor_learning_rate = 0.0005;
  double cacla_critic_learning_rate = 0.000075;
  double cacla_var_start_variation = 1.0;
  double cacla_var_beta = 0.001;

  // DPG
  double dpg_target_network_tau = 0.001;
  double dpg_actor_learning_rate = 0.00001;
  double dpg_critic_learning_rate = 0.0005;
  double dpg_q_value_target_increase = 2.0;
  int dpg_feed_action_in_layer = 1;
  double dpg_critic_l2_weight_decay = 0.001;

  // SPG
  double spg_target_network_tau = 0.001;
  double spg_actor_learning_rate = 0.0005;
  double spg_critic_learning_rate = 0.0005;
  int spg_offline_sample_number = 3;
  double spg_offline_exploration_noise_at_end = 0.0004;
  bool spg_store_best_action = false;
  bool spg_online_exploration = false;
  int spg_online_sample_number = 3;

  // World
  double map_side = 0.0;  // 0 = pick by environment (400 pellet, 600 self-play)
  double pellet_mass = 1.0;
  double map_units_per_pellet = 400.0;
  double mass_decay_per_step = 0.0005;
  double absorption_threshold = 1.25;

  // Test protocol
  double test_every_fraction = 0.05;
  int during_training_test_runs = 5;
  int post_training_test_runs = 10;
  long pellet_test_steps = 15000;
  long fight_test_steps = 30000;

  // Output
  std::string output_directory;
  std::string trajectory_log;

  AgentKind agent_kind() const { return agent_kind_from_string(agent); }
  EnvKind env_kind() const { return env_kind_from_string(environment); }
  double effective_map_side() const {
    if (map_side > 0.0) return map_side;
    return env_kind() == EnvKind::selfplay ? 600.0 : 400.0;
  }

  /// Applies one `key = value` assignment. Unknown keys and unparseable
  /// values throw config_error.
  void set(const std::string& key, const std::string& value);

  /// Sanity-checks ranges (discount in [0,1), taus in [0,1], positive
  /// rates, ...). Throws config_error on the first violation.
  void validate() const;

  /// Serializes every key in a fixed order (the parseable inverse of set()).
  void write(std::ostream& out) const;
};

/// Parses a whole `key = value` file ('#' starts a comment). Unknown keys
/// are hard errors.
ExperimentConfig load_config_file(const std::string& path);
ExperimentConfig parse_config(std::istream& in, const std::string& origin);

/// Applies `KEY=VALUE` to an existing config.
void apply_override(ExperimentConfig& cfg, const std::string& assignment);

}  // namespace agarl
