#include "agarl/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "agarl/errors.hpp"

namespace agarl {

std::string to_string(AgentKind k) {
  switch (k) {
    case AgentKind::qlearning: return "qlearning";
    case AgentKind::cacla: return "cacla";
    case AgentKind::cacla_var: return "cacla_var";
    case AgentKind::dpg: return "dpg";
    case AgentKind::spg: return "spg";
  }
  return "?";
}

std::string to_string(EnvKind e) { return e == EnvKind::pellet ? "pellet" : "selfplay"; }

AgentKind agent_kind_from_string(const std::string& s) {
  if (s == "qlearning") return AgentKind::qlearning;
  if (s == "cacla") return AgentKind::cacla;
  if (s == "cacla_var") return AgentKind::cacla_var;
  if (s == "dpg") return AgentKind::dpg;
  if (s == "spg") return AgentKind::spg;
  throw config_error("unknown agent kind '" + s + "'");
}

EnvKind env_kind_from_string(const std::string& s) {
  if (s == "pellet") return EnvKind::pellet;
  if (s == "selfplay") return EnvKind::selfplay;
  throw config_error("unknown environment '" + s + "'");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw config_error("key '" + key + "': cannot parse '" + v + "' as a number");
  }
}

long parse_long(const std::string& key, const std::string& v) {
  long x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc{} || p != v.data() + v.size())
    throw config_error("key '" + key + "': cannot parse '" + v + "' as an integer");
  return x;
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw config_error("key '" + key + "': cannot parse '" + v + "' as a boolean");
}

}  // namespace

void ExperimentConfig::set(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  auto d = [&] { return parse_double(key, v); };
  auto l = [&] { return parse_long(key, v); };
  auto i = [&] { return static_cast<int>(parse_long(key, v)); };
  auto b = [&] { return parse_bool(key, v); };

  if (key == "agent") agent = v;
  else if (key == "environment") environment = v;
  else if (key == "total_training_steps") total_training_steps = l();
  else if (key == "frame_skip_rate") frame_skip_rate = i();
  else if (key == "reset_environment_after") reset_environment_after = l();
  else if (key == "seed") seed = static_cast<std::uint64_t>(l());
  else if (key == "discount_factor") discount_factor = d();
  else if (key == "training_batch_length") training_batch_length = i();
  else if (key == "exploration_noise_start") exploration_noise_start = d();
  else if (key == "exploration_noise_end") exploration_noise_end = d();
  else if (key == "prioritized_experience_replay_alpha") prioritized_experience_replay_alpha = d();
  else if (key == "prioritized_experience_replay_beta") prioritized_experience_replay_beta = d();
  else if (key == "prioritized_experience_replay_capacity") prioritized_experience_replay_capacity = l();
  else if (key == "per_literal_is_weights") per_literal_is_weights = b();
  else if (key == "q_learning_steps_between_target_network_updates") q_learning_steps_between_target_network_updates = l();
  else if (key == "q_learning_hidden_layers") q_learning_hidden_layers = i();
  else if (key == "q_learning_neurons_per_hidden_layer") q_learning_neurons_per_hidden_layer = i();
  else if (key == "q_learning_learning_rate") q_learning_learning_rate = d();
  else if (key == "q_learning_std_of_noise_at_training_end") q_learning_std_of_noise_at_training_end = d();
  else if (key == "q_learning_number_of_actions_per_side") q_learning_number_of_actions_per_side = i();
  else if (key == "actor_critic_hidden_layers") actor_critic_hidden_layers = i();
  else if (key == "actor_critic_critic_neurons_per_hidden_layer") actor_critic_critic_neurons_per_hidden_layer = i();
  else if (key == "actor_critic_actor_neurons_per_hidden_layer") actor_critic_actor_neurons_per_hidden_layer = i();
  else if (key == "cacla_target_network_tau") cacla_target_network_tau = d();
  else if (key == "cacla_actor_learning_rate") cacla_actor_learning_rate = d();
  else if (key == "cacla_critic_learning_rate") cacla_critic_learning_rate = d();
  else if (key == "cacla_var_start_variation") cacla_var_start_variation = d();
  else if (key == "cacla_var_beta") cacla_var_beta = d();
  else if (key == "dpg_target_network_tau") dpg_target_network_tau = d();
  else if (key == "dpg_actor_learning_rate") dpg_actor_learning_rate = d();
  else if (key == "dpg_critic_learning_rate") dpg_critic_learning_rate = d();
  else if (key == "dpg_q_value_target_increase") dpg_q_value_target_increase = d();
  else if (key == "dpg_feed_action_in_layer") dpg_feed_action_in_layer = i();
  else if (key == "dpg_critic_l2_weight_decay") dpg_critic_l2_weight_decay = d();
  else if (key == "spg_target_network_tau") spg_target_network_tau = d();
  else if (key == "spg_actor_learning_rate") spg_actor_learning_rate = d();
  else if (key == "spg_critic_learning_rate") spg_critic_learning_rate = d();
  else if (key == "spg_offline_sample_number") spg_offline_sample_number = i();
  else if (key == "spg_offline_exploration_noise_at_end") spg_offline_exploration_noise_at_end = d();
  else if (key == "spg_store_best_action") spg_store_best_action = b();
  else if (key == "spg_online_exploration") spg_online_exploration = b();
  else if (key == "spg_online_sample_number") spg_online_sample_number = i();
  else if (key == "map_side") map_side = d();
  else if (key == "pellet_mass") pellet_mass = d();
  else if (key == "map_units_per_pellet") map_units_per_pellet = d();
  else if (key == "mass_decay_per_step") mass_decay_per_step = d();
  else if (key == "absorption_threshold") absorption_threshold = d();
  else if (key == "test_every_fraction") test_every_fraction = d();
  else if (key == "during_training_test_runs") during_training_test_runs = i();
  else if (key == "post_training_test_runs") post_training_test_runs = i();
  else if (key == "pellet_test_steps") pellet_test_steps = l();
  else if (key == "fight_test_steps") fight_test_steps = l();
  else if (key == "output_directory") output_directory = v;
  else if (key == "trajectory_log") trajectory_log = v;
  else throw config_error("unknown config key '" + key + "'");
}

void ExperimentConfig::validate() const {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw config_error(msg);
  };
  agent_kind_from_string(agent);
  env_kind_from_string(environment);
  require(discount_factor >= 0.0 && discount_factor < 1.0, "discount_factor must lie in [0, 1)");
  require(total_training_steps >= 0, "total_training_steps must be non-negative");
  require(frame_skip_rate >= 0, "frame_skip_rate must be non-negative");
  require(reset_environment_after > 0, "reset_environment_after must be positive");
  require(training_batch_length >= 1, "training_batch_length must be at least 1");
  require(exploration_noise_start > 0.0, "exploration_noise_start must be positive");
  require(exploration_noise_end > 0.0, "exploration_noise_end must be positive");
  require(prioritized_experience_replay_alpha >= 0.0, "PER alpha must be non-negative");
  require(prioritized_experience_replay_beta >= 0.0, "PER beta must be non-negative");
  require(prioritized_experience_replay_capacity >= 1, "PER capacity must be at least 1");
  require(q_learning_steps_between_target_network_updates >= 1,
          "q_learning_steps_between_target_network_updates must be at least 1");
  require(q_learning_hidden_layers >= 1 && actor_critic_hidden_layers >= 1,
          "hidden layer counts must be at least 1");
  require(q_learning_neurons_per_hidden_layer >= 1 &&
              actor_critic_critic_neurons_per_hidden_layer >= 1 &&
              actor_critic_actor_neurons_per_hidden_layer >= 1,
          "hidden layer widths must be at least 1");
  require(q_learning_learning_rate > 0.0 && cacla_actor_learning_rate > 0.0 &&
              cacla_critic_learning_rate > 0.0 && dpg_actor_learning_rate > 0.0 &&
              dpg_critic_learning_rate > 0.0 && spg_actor_learning_rate > 0.0 &&
              spg_critic_learning_rate > 0.0,
          "learning rates must be positive");
  require(q_learning_std_of_noise_at_training_end > 0.0 &&
              spg_offline_exploration_noise_at_end > 0.0,
          "schedule endpoints must be positive");
  require(q_learning_number_of_actions_per_side >= 1, "action grid side must be at least 1");
  require(cacla_target_network_tau >= 0.0 && cacla_target_network_tau <= 1.0 &&
              dpg_target_network_tau >= 0.0 && dpg_target_network_tau <= 1.0 &&
              spg_target_network_tau >= 0.0 && spg_target_network_tau <= 1.0,
          "tau values must lie in [0, 1]");
  require(cacla_var_start_variation > 0.0, "cacla_var_start_variation must be positive");
  require(cacla_var_beta > 0.0 && cacla_var_beta < 1.0, "cacla_var_beta must lie in (0, 1)");
  require(dpg_feed_action_in_layer >= 0 &&
              dpg_feed_action_in_layer <= actor_critic_hidden_layers,
          "dpg_feed_action_in_layer out of range");
  require(dpg_critic_l2_weight_decay >= 0.0, "L2 decay must be non-negative");
  require(spg_offline_sample_number >= 0 && spg_online_sample_number >= 0,
          "SPG sample counts must be non-negative");
  require(map_side >= 0.0, "map_side must be non-negative (0 = auto)");
  require(pellet_mass > 0.0, "pellet_mass must be positive");
  require(map_units_per_pellet > 0.0, "map_units_per_pellet must be positive");
  require(mass_decay_per_step >= 0.0 && mass_decay_per_step < 1.0,
          "mass_decay_per_step must lie in [0, 1)");
  require(absorption_threshold >= 1.0, "absorption_threshold must be at least 1");
  require(test_every_fraction > 0.0 && test_every_fraction <= 1.0,
          "test_every_fraction must lie in (0, 1]");
  require(during_training_test_runs >= 0, "during_training_test_runs must be non-negative");
  require(post_training_test_runs >= 0, "post_training_test_runs must be non-negative");
  require(pellet_test_steps >= 1 && fight_test_steps >= 1, "test lengths must be positive");
}

void ExperimentConfig::write(std::ostream& out) const {
  char buf[64];
  auto num = [&buf](double x) {
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
  };
  out << "agent = " << agent << '\n';
  out << "environment = " << environment << '\n';
  out << "total_training_steps = " << total_training_steps << '\n';
  out << "frame_skip_rate = " << frame_skip_rate << '\n';
  out << "reset_environment_after = " << reset_environment_after << '\n';
  out << "seed = " << seed << '\n';
  out << "discount_factor = " << num(discount_factor) << '\n';
  out << "training_batch_length = " << training_batch_length << '\n';
  out << "exploration_noise_start = " << num(exploration_noise_start) << '\n';
  out << "exploration_noise_end = " << num(exploration_noise_end) << '\n';
  out << "prioritized_experience_replay_alpha = " << num(prioritized_experience_replay_alpha) << '\n';
  out << "prioritized_experience_replay_beta = " << num(prioritized_experience_replay_beta) << '\n';
  out << "prioritized_experience_replay_capacity = " << prioritized_experience_replay_capacity << '\n';
  out << "per_literal_is_weights = " << (per_literal_is_weights ? "true" : "false") << '\n';
  out << "q_learning_steps_between_target_network_updates = "
      << q_learning_steps_between_target_network_updates << '\n';
  out << "q_learning_hidden_layers = " << q_learning_hidden_layers << '\n';
  out << "q_learning_neurons_per_hidden_layer = " << q_learning_neurons_per_hidden_layer << '\n';
  out << "q_learning_learning_rate = " << num(q_learning_learning_rate) << '\n';
  out << "q_learning_std_of_noise_at_training_end = "
      << num(q_learning_std_of_noise_at_training_end) << '\n';
  out << "q_learning_number_of_actions_per_side = " << q_learning_number_of_actions_per_side << '\n';
  out << "actor_critic_hidden_layers = " << actor_critic_hidden_layers << '\n';
  out << "actor_critic_critic_neurons_per_hidden_layer = "
      << actor_critic_critic_neurons_per_hidden_layer << '\n';
  out << "actor_critic_actor_neurons_per_hidden_layer = "
      << actor_critic_actor_neurons_per_hidden_layer << '\n';
  out << "cacla_target_network_tau = " << num(cacla_target_network_tau) << '\n';
  out << "cacla_actor_learning_rate = " << num(cacla_actor_learning_rate) << '\n';
  out << "cacla_critic_learning_rate = " << num(cacla_critic_learning_rate) << '\n';
  out << "cacla_var_start_variation = " << num(cacla_var_start_variation) << '\n';
  out << "cacla_var_beta = " << num(cacla_var_beta) << '\n';
  out << "dpg_target_network_tau = " << num(dpg_target_network_tau) << '\n';
  out << "dpg_actor_learning_rate = " << num(dpg_actor_learning_rate) << '\n';
  out << "dpg_critic_learning_rate = " << num(dpg_critic_learning_rate) << '\n';
  out << "dpg_q_value_target_increase = " << num(dpg_q_value_target_increase) << '\n';
  out << "dpg_feed_action_in_layer = " << dpg_feed_action_in_layer << '\n';
  out << "dpg_critic_l2_weight_decay = " << num(dpg_critic_l2_weight_decay) << '\n';
  out << "spg_target_network_tau = " << num(spg_target_network_tau) << '\n';
  out << "spg_actor_learning_rate = " << num(spg_actor_learning_rate) << '\n';
  out << "spg_critic_learning_rate = " << num(spg_critic_learning_rate) << '\n';
  out << "spg_offline_sample_number = " << spg_offline_sample_number << '\n';
  out << "spg_offline_exploration_noise_at_end = "
      << num(spg_offline_exploration_noise_at_end) << '\n';
  out << "spg_store_best_action = " << (spg_store_best_action ? "true" : "false") << '\n';
  out << "spg_online_exploration = " << (spg_online_exploration ? "true" : "false") << '\n';
  out << "spg_online_sample_number = " << spg_online_sample_number << '\n';
  out << "map_side = " << num(map_side) << '\n';
  out << "pellet_mass = " << num(pellet_mass) << '\n';
  out << "map_units_per_pellet = " << num(map_units_per_pellet) << '\n';
  out << "mass_decay_per_step = " << num(mass_decay_per_step) << '\n';
  out << "absorption_threshold = " << num(absorption_threshold) << '\n';
  out << "test_every_fraction = " << num(test_every_fraction) << '\n';
  out << "during_training_test_runs = " << during_training_test_runs << '\n';
  out << "post_training_test_runs = " << post_training_test_runs << '\n';
  out << "pellet_test_steps = " << pellet_test_steps << '\n';
  out << "fight_test_steps = " << fight_test_steps << '\n';
  out << "output_directory = " << output_directory << '\n';
  out << "trajectory_log = " << trajectory_log << '\n';
}

ExperimentConfig parse_config(std::istream& in, const std::string& origin) {
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open config file '" + path + "'");
  return parse_config(in, path);
}

void apply_override(ExperimentConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw config_error("override '" + assignment + "' is not of the form KEY=VALUE");
  cfg.set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

}  // namespace agarl
