#include "kickoff/driver/config.hpp"

#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kickoff::driver {
namespace {

// every key the loader understands; anything else in the file is a typo
const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "seed",
      "env_step_budget",
      "players_per_team",
      "variant",
      "output_dir",
      "checkpoint_every_rollouts",
      "dedicated_probes",
      "probe_matches",
      "workers.num_workers",
      "workers.steps_per_worker",
      "train.gamma",
      "train.lambda_gae",
      "train.epsilon_clip",
      "train.beta_entropy",
      "train.lr_actor",
      "train.lr_critic",
      "train.minibatch_size",
      "train.epochs_per_rollout",
      "train.alpha_ssir",
      "train.warmup_rollouts",
      "network.actor_hidden",
      "network.critic_hidden",
      "network.side_hidden",
      "curriculum.window_capacity",
      "curriculum.selfplay_threshold",
      "curriculum.thresholds",
      "curriculum.strength_factors",
      "curriculum.stage_step_limit",
      "curriculum.selfplay_step_limit",
  };
  return keys;
}

std::uint64_t get_u64(const toml::Document& doc, const std::string& key,
                      std::uint64_t fallback) {
  const std::int64_t v = doc.get_int(key, static_cast<std::int64_t>(fallback));
  if (v < 0) throw std::invalid_argument("config: " + key + " must be non-negative");
  return static_cast<std::uint64_t>(v);
}

std::vector<std::size_t> get_size_array(const toml::Document& doc, const std::string& key,
                                        std::vector<std::size_t> fallback) {
  if (!doc.has(key)) return fallback;
  std::vector<std::size_t> out;
  for (double v : doc.get_double_array(key)) {
    if (v < 1.0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
      throw std::invalid_argument("config: " + key + " entries must be positive integers");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

void write_size_array(std::ostringstream& os, const char* key,
                      const std::vector<std::size_t>& xs) {
  os << key << " = [";
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i];
  os << "]\n";
}

void write_double_array(std::ostringstream& os, const char* key,
                        const std::vector<double>& xs) {
  os << key << " = [";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    os << (i ? ", " : "") << format_double(xs[i]);
  }
  os << "]\n";
}

}  // namespace

std::string format_double(double v) {
  for (int prec = 1; prec <= 17; ++prec) {
    std::ostringstream os;
    os.precision(prec);
    os << v;
    if (std::stod(os.str()) == v) {
      std::string s = os.str();
      if (s.find_first_of(".eE") == std::string::npos) s += ".0";
      return s;
    }
  }
  throw std::logic_error("format_double: no representation found");
}

void NetworkConfig::validate() const {
  if (actor_hidden.empty() || critic_hidden.empty()) {
    throw std::invalid_argument("config: networks need at least one hidden layer");
  }
  for (std::size_t w : actor_hidden) {
    if (w == 0) throw std::invalid_argument("config: zero-width actor layer");
  }
  for (std::size_t w : critic_hidden) {
    if (w == 0) throw std::invalid_argument("config: zero-width critic layer");
  }
  if (side_hidden == 0) throw std::invalid_argument("config: zero-width side network");
}

void RunConfig::validate() const {
  if (players_per_team == 0) throw std::invalid_argument("config: zero players per team");
  if (output_dir.empty()) throw std::invalid_argument("config: empty output directory");
  if (checkpoint_every_rollouts == 0) {
    throw std::invalid_argument("config: checkpoint cadence must be positive");
  }
  if (dedicated_probes && probe_matches == 0) {
    throw std::invalid_argument("config: dedicated probes need probe_matches > 0");
  }
  workers.validate();
  train.validate();
  network.validate();
  curriculum.validate();
  if (curriculum.scenarios.front().players_per_team != players_per_team) {
    throw std::invalid_argument("config: curriculum built for a different team size");
  }
}

RunConfig default_run_config() {
  RunConfig cfg;  // warmup defaults to the desk-scaled 40; the full profile uses 700
  cfg.curriculum = league::default_curriculum(cfg.players_per_team);
  return cfg;
}

RunConfig run_config_from_toml(const toml::Document& doc, bool apply_env) {
  for (const auto& [key, value] : doc.values()) {
    if (!known_keys().count(key)) {
      throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  }

  RunConfig cfg;
  cfg.seed = get_u64(doc, "seed", cfg.seed);
  cfg.env_step_budget = get_u64(doc, "env_step_budget", cfg.env_step_budget);
  cfg.players_per_team = get_u64(doc, "players_per_team", cfg.players_per_team);
  cfg.variant = rewards::parse_variant(
      doc.get_string("variant", rewards::variant_name(cfg.variant)));
  cfg.output_dir = doc.get_string("output_dir", cfg.output_dir);
  cfg.checkpoint_every_rollouts =
      get_u64(doc, "checkpoint_every_rollouts", cfg.checkpoint_every_rollouts);
  cfg.dedicated_probes = doc.get_bool("dedicated_probes", cfg.dedicated_probes);
  cfg.probe_matches = get_u64(doc, "probe_matches", cfg.probe_matches);

  cfg.workers.num_workers = get_u64(doc, "workers.num_workers", cfg.workers.num_workers);
  cfg.workers.steps_per_worker =
      get_u64(doc, "workers.steps_per_worker", cfg.workers.steps_per_worker);

  auto& t = cfg.train;
  t.gamma = doc.get_double("train.gamma", t.gamma);
  t.lambda_gae = doc.get_double("train.lambda_gae", t.lambda_gae);
  t.epsilon_clip = doc.get_double("train.epsilon_clip", t.epsilon_clip);
  t.beta_entropy = doc.get_double("train.beta_entropy", t.beta_entropy);
  t.lr_actor = doc.get_double("train.lr_actor", t.lr_actor);
  t.lr_critic = doc.get_double("train.lr_critic", t.lr_critic);
  t.minibatch_size = get_u64(doc, "train.minibatch_size", t.minibatch_size);
  t.epochs_per_rollout = get_u64(doc, "train.epochs_per_rollout", t.epochs_per_rollout);
  t.alpha_ssir = doc.get_double("train.alpha_ssir", t.alpha_ssir);
  t.warmup_rollouts = get_u64(doc, "train.warmup_rollouts", t.warmup_rollouts);

  cfg.network.actor_hidden =
      get_size_array(doc, "network.actor_hidden", cfg.network.actor_hidden);
  cfg.network.critic_hidden =
      get_size_array(doc, "network.critic_hidden", cfg.network.critic_hidden);
  cfg.network.side_hidden = get_u64(doc, "network.side_hidden", cfg.network.side_hidden);

  auto& cur = cfg.curriculum;
  cur = league::default_curriculum(cfg.players_per_team);
  cur.window_capacity = get_u64(doc, "curriculum.window_capacity", cur.window_capacity);
  cur.selfplay_threshold =
      doc.get_double("curriculum.selfplay_threshold", cur.selfplay_threshold);
  if (doc.has("curriculum.thresholds")) {
    const auto arr = doc.get_double_array("curriculum.thresholds");
    if (arr.size() != cur.scenarios.size()) {
      throw std::invalid_argument("config: thresholds must cover every stage");
    }
    cur.thresholds = arr;
  }
  if (doc.has("curriculum.strength_factors")) {
    const auto arr = doc.get_double_array("curriculum.strength_factors");
    if (arr.size() != cur.scenarios.size()) {
      throw std::invalid_argument("config: strength_factors must cover every stage");
    }
    cur.strength_factors = arr;
    for (std::size_t k = 0; k < arr.size(); ++k) {
      cur.scenarios[k].opponent_strength = arr[k];
    }
  }
  if (doc.has("curriculum.stage_step_limit")) {
    const auto limit = static_cast<int>(get_u64(doc, "curriculum.stage_step_limit", 500));
    for (auto& sc : cur.scenarios) sc.episode_step_limit = limit;
  }
  if (doc.has("curriculum.selfplay_step_limit")) {
    cur.selfplay.episode_step_limit =
        static_cast<int>(get_u64(doc, "curriculum.selfplay_step_limit", 3000));
  }

  if (apply_env) {
    if (const char* s = std::getenv("KICKOFF_SEED")) {
      std::size_t used = 0;
      const std::string text(s);
      cfg.seed = std::stoull(text, &used);
      if (used != text.size()) throw std::invalid_argument("KICKOFF_SEED is not an integer");
    }
    if (const char* d = std::getenv("KICKOFF_OUTPUT_DIR")) {
      if (*d == '\0') throw std::invalid_argument("KICKOFF_OUTPUT_DIR is empty");
      cfg.output_dir = d;
    }
  }

  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path, bool apply_env) {
  return run_config_from_toml(toml::Document::parse_file(path), apply_env);
}

std::string run_config_toml(const RunConfig& cfg) {
  std::ostringstream os;
  os << "seed = " << cfg.seed << "\n";
  os << "env_step_budget = " << cfg.env_step_budget << "\n";
  os << "players_per_team = " << cfg.players_per_team << "\n";
  os << "variant = \"" << rewards::variant_name(cfg.variant) << "\"\n";
  os << "output_dir = \"" << cfg.output_dir << "\"\n";
  os << "checkpoint_every_rollouts = " << cfg.checkpoint_every_rollouts << "\n";
  os << "dedicated_probes = " << (cfg.dedicated_probes ? "true" : "false") << "\n";
  os << "probe_matches = " << cfg.probe_matches << "\n";

  os << "\n[workers]\n";
  os << "num_workers = " << cfg.workers.num_workers << "\n";
  os << "steps_per_worker = " << cfg.workers.steps_per_worker << "\n";

  os << "\n[train]\n";
  os << "gamma = " << format_double(cfg.train.gamma) << "\n";
  os << "lambda_gae = " << format_double(cfg.train.lambda_gae) << "\n";
  os << "epsilon_clip = " << format_double(cfg.train.epsilon_clip) << "\n";
  os << "beta_entropy = " << format_double(cfg.train.beta_entropy) << "\n";
  os << "lr_actor = " << format_double(cfg.train.lr_actor) << "\n";
  os << "lr_critic = " << format_double(cfg.train.lr_critic) << "\n";
  os << "minibatch_size = " << cfg.train.minibatch_size << "\n";
  os << "epochs_per_rollout = " << cfg.train.epochs_per_rollout << "\n";
  os << "alpha_ssir = " << format_double(cfg.train.alpha_ssir) << "\n";
  os << "warmup_rollouts = " << cfg.train.warmup_rollouts << "\n";

  os << "\n[network]\n";
  write_size_array(os, "actor_hidden", cfg.network.actor_hidden);
  write_size_array(os, "critic_hidden", cfg.network.critic_hidden);
  os << "side_hidden = " << cfg.network.side_hidden << "\n";

  os << "\n[curriculum]\n";
  os << "window_capacity = " << cfg.curriculum.window_capacity << "\n";
  os << "selfplay_threshold = " << format_double(cfg.curriculum.selfplay_threshold) << "\n";
  write_double_array(os, "thresholds", cfg.curriculum.thresholds);
  write_double_array(os, "strength_factors", cfg.curriculum.strength_factors);
  os << "stage_step_limit = " << cfg.curriculum.scenarios.front().episode_step_limit
     << "\n";
  os << "selfplay_step_limit = " << cfg.curriculum.selfplay.episode_step_limit << "\n";
  return os.str();
}

}  // namespace kickoff::driver
