#include "kickoff/driver/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "kickoff/common/binio.hpp"
#include "kickoff/features/observation.hpp"
#include "kickoff/nn/checkpoint.hpp"

namespace kickoff::driver {
namespace {

namespace fs = std::filesystem;

// Learner-side rng streams sit far above the worker streams (0..N-1).
constexpr std::uint64_t kActorStream = 0x100000;
constexpr std::uint64_t kCriticStream = 0x100001;
constexpr std::uint64_t kSsirStream = 0x100002;
constexpr std::uint64_t kRndStream = 0x100003;
constexpr std::uint64_t kLearnerStream = 0x100004;

constexpr double kMaxGradNorm = 10.0;  // guards rare spikes before Adam

constexpr std::uint64_t kCheckpointTrailer = 0x656e6f642d6b636bULL;  // "kck-done"

nn::MlpSpec actor_spec(const RunConfig& cfg) {
  nn::MlpSpec spec;
  spec.layer_sizes.push_back(features::actor_dim(cfg.players_per_team));
  for (std::size_t w : cfg.network.actor_hidden) spec.layer_sizes.push_back(w);
  spec.layer_sizes.push_back(env::kActionCount);
  spec.output = nn::Activation::kIdentity;
  spec.output_gain = 0.01;  // near-uniform initial policy
  return spec;
}

nn::MlpSpec critic_spec(const RunConfig& cfg) {
  nn::MlpSpec spec;
  spec.layer_sizes.push_back(features::critic_dim(cfg.players_per_team));
  for (std::size_t w : cfg.network.critic_hidden) spec.layer_sizes.push_back(w);
  spec.layer_sizes.push_back(1);
  return spec;
}

nn::Mlp init_actor(const RunConfig& cfg) {
  Rng rng(cfg.seed, kActorStream);
  return nn::Mlp(actor_spec(cfg), rng);
}

nn::Mlp init_critic(const RunConfig& cfg) {
  Rng rng(cfg.seed, kCriticStream);
  return nn::Mlp(critic_spec(cfg), rng);
}

RunConfig validated(RunConfig cfg) {
  cfg.validate();
  return cfg;
}

std::string heuristic_descriptor(double strength) {
  std::ostringstream os;
  os << "heuristic-" << strength;
  return os.str();
}

void write_moments(std::ostream& os, const RunningMoments& m) {
  binio::write_f64(os, m.count());
  binio::write_f64(os, m.raw_mean());
  binio::write_f64(os, m.raw_m2());
}

RunningMoments read_moments(std::istream& is) {
  RunningMoments m;
  const double count = binio::read_f64(is);
  const double mean = binio::read_f64(is);
  const double m2 = binio::read_f64(is);
  m.restore(count, mean, m2);
  return m;
}

void require_adam_fits(const nn::Adam& opt, const nn::Mlp& net, const char* what) {
  if (opt.m().size() != net.parameter_count()) {
    throw std::runtime_error(std::string("checkpoint: ") + what +
                             " optimizer does not match its network");
  }
}

}  // namespace

Trainer::Trainer(RunConfig cfg) : Trainer(std::move(cfg), std::string(), false) {}

Trainer::Trainer(RunConfig cfg, const std::string& resume_dir)
    : Trainer(std::move(cfg), resume_dir, true) {}

Trainer::Trainer(RunConfig cfg, const std::string& resume_dir, bool resuming)
    : cfg_(validated(std::move(cfg))),
      actor_(init_actor(cfg_)),
      critic_(init_critic(cfg_)),
      opt_actor_(actor_.parameter_count()),
      opt_critic_(critic_.parameter_count()),
      pool_(cfg_.output_dir + "/pool"),
      learner_rng_(cfg_.seed, kLearnerStream) {
  if (cfg_.variant == rewards::RewardVariant::kSsir) {
    Rng rng(cfg_.seed, kSsirStream);
    ssir_ = std::make_unique<rewards::Ssir>(features::actor_dim(cfg_.players_per_team),
                                            env::kActionCount, rng,
                                            cfg_.network.side_hidden);
  } else if (cfg_.variant == rewards::RewardVariant::kRnd) {
    Rng rng(cfg_.seed, kRndStream);
    rnd_ = std::make_unique<rewards::Rnd>(features::critic_dim(cfg_.players_per_team), rng,
                                          cfg_.network.side_hidden);
  }
  workers_ = rollout::make_workers(
      cfg_.workers, league::scenario_for(phase_, cfg_.curriculum), cfg_.seed);
  phase_accounts_.push_back({league::phase_label(phase_), 0, 0.0});

  init_run_dir(resuming);
  if (resuming) {
    if (resume_dir.empty()) throw std::invalid_argument("trainer: empty resume directory");
    load_checkpoint(resume_dir + "/checkpoint.bin");
  }
}

std::string Trainer::checkpoint_path() const { return cfg_.output_dir + "/checkpoint.bin"; }

void Trainer::init_run_dir(bool resuming) {
  fs::create_directories(cfg_.output_dir);
  {
    std::ofstream echo(cfg_.output_dir + "/config_echo.toml");
    if (!echo) throw std::runtime_error("trainer: output directory not writable");
    echo << run_config_toml(cfg_);
  }
  {
    std::ofstream layout(cfg_.output_dir + "/feature_layout.csv");
    layout << features::layout_csv(cfg_.players_per_team);
  }

  const auto mode = resuming ? std::ios::app : std::ios::trunc;
  const std::string progress_path = cfg_.output_dir + "/league_progress.csv";
  const bool need_header =
      !resuming || !fs::exists(progress_path) || fs::file_size(progress_path) == 0;
  metrics_.open(cfg_.output_dir + "/metrics.jsonl", mode);
  progress_.open(progress_path, mode);
  if (!metrics_ || !progress_) {
    throw std::runtime_error("trainer: cannot open log files");
  }
  if (need_header) {
    progress_ << "phase,rollout,env_steps,elapsed_seconds,win_rate,threshold,advanced\n";
    progress_.flush();
  }
}

const nn::Mlp& Trainer::opponent_net(std::uint64_t id) {
  auto it = opponent_cache_.find(id);
  if (it != opponent_cache_.end()) return it->second;
  const league::PoolEntry* entry = pool_.find(id);
  if (!entry) throw std::logic_error("trainer: opponent id missing from pool");
  auto [pos, inserted] = opponent_cache_.emplace(id, pool_.load(*entry));
  return pos->second;
}

void Trainer::feed_window(const std::vector<rollout::RolloutBuffer>& buffers,
                          bool vs_snapshot, std::uint64_t opponent_id,
                          double opponent_strength) {
  // Dedicated probes only replace rollout outcomes against the scripted
  // side; snapshot phases always read the training episodes.
  if (cfg_.dedicated_probes && !vs_snapshot) {
    const auto& sc = league::scenario_for(phase_, cfg_.curriculum);
    for (std::size_t m = 0; m < cfg_.probe_matches; ++m) {
      const auto stats =
          eval::play_match(actor_, opponent_strength, sc, learner_rng_.next_u64());
      // probe matches cost no training budget, so length 0
      league::record_result(phase_,
                            league::match_result(static_cast<int>(stats.goals_for),
                                                 static_cast<int>(stats.goals_against), 0),
                            cfg_.curriculum.window_capacity);
    }
    return;
  }
  for (const auto& buf : buffers) {
    for (const auto& ep : buf.episodes) {
      if (!ep.completed) continue;
      league::record_result(phase_, league::match_result(ep),
                            cfg_.curriculum.window_capacity);
      if (vs_snapshot) {
        pool_.record_match(opponent_id, ep.outcome == rollout::Outcome::kWin);
      }
    }
  }
}

void Trainer::update_policy(const policy::RolloutBatch& batch, RolloutLog& log) {
  batch.require_advantages();
  std::vector<double> grad_actor(actor_.parameter_count());
  std::vector<double> grad_critic(critic_.parameter_count());

  policy::JrpoStats sums;
  double critic_sum = 0.0, norm_actor_sum = 0.0, norm_critic_sum = 0.0;
  std::size_t updates = 0;

  for (std::size_t epoch = 0; epoch < cfg_.train.epochs_per_rollout; ++epoch) {
    const auto order = policy::shuffled_indices(batch.size(), learner_rng_);
    for (std::size_t start = 0; start < order.size(); start += cfg_.train.minibatch_size) {
      const auto view = std::span(order).subspan(
          start, std::min(cfg_.train.minibatch_size, order.size() - start));

      const auto stats = policy::jrpo_objective(actor_, batch, view,
                                                cfg_.train.epsilon_clip,
                                                cfg_.train.beta_entropy,
                                                /*normalize_advantages=*/true, grad_actor);
      for (auto& g : grad_actor) g = -g;  // ascent objective -> descent step
      norm_actor_sum += nn::global_norm(grad_actor);
      nn::clip_global_norm(grad_actor, kMaxGradNorm);
      opt_actor_.step(actor_.mutable_parameters(), grad_actor, cfg_.train.lr_actor);

      critic_sum += policy::critic_loss(critic_, batch, view, vnorm_, grad_critic);
      norm_critic_sum += nn::global_norm(grad_critic);
      nn::clip_global_norm(grad_critic, kMaxGradNorm);
      opt_critic_.step(critic_.mutable_parameters(), grad_critic, cfg_.train.lr_critic);

      sums.objective += stats.objective;
      sums.surrogate += stats.surrogate;
      sums.entropy += stats.entropy;
      sums.clip_fraction += stats.clip_fraction;
      sums.approx_kl += stats.approx_kl;
      ++updates;
    }
  }

  const double n = static_cast<double>(updates);
  log.actor_stats = {sums.objective / n, sums.surrogate / n, sums.entropy / n,
                     sums.clip_fraction / n, sums.approx_kl / n};
  log.actor_grad_norm = norm_actor_sum / n;
  log.critic_loss = critic_sum / n;
  log.critic_grad_norm = norm_critic_sum / n;
}

const RolloutLog& Trainer::step_rollout() {
  if (budget_exhausted()) throw std::logic_error("trainer: budget already exhausted");
  const auto tick = std::chrono::steady_clock::now();

  RolloutLog log;
  log.rollout = rollout_index_;
  log.phase = league::phase_label(phase_);

  // next episodes pick up the current stage's scenario
  const auto& scenario = league::scenario_for(phase_, cfg_.curriculum);
  log.scenario_id = scenario.id;
  if (workers_.front().scenario().id != scenario.id) {
    for (auto& w : workers_) w.set_scenario(scenario);
  }

  const auto choice =
      league::select_opponent(phase_, cfg_.curriculum, pool_.entries(), learner_rng_);
  rollout::Opponent opponent;
  opponent.strength = choice.strength;
  const bool vs_snapshot = choice.entry != nullptr;
  std::uint64_t opponent_id = 0;
  if (vs_snapshot) {
    opponent_id = choice.entry->id;
    log.opponent = "snapshot-" + std::to_string(opponent_id) + "-" + choice.entry->label;
    opponent.policy = &opponent_net(opponent_id);
  } else {
    log.opponent = heuristic_descriptor(choice.strength);
  }
  log.opponent_strength = choice.strength;

  rollout::RewardShaping shaping;
  shaping.variant = cfg_.variant;
  shaping.ssir = ssir_.get();
  shaping.rnd = rnd_.get();
  shaping.alpha_ssir = cfg_.train.alpha_ssir;
  shaping.bonus_active = rewards::bonus_active(rollout_index_, cfg_.train.warmup_rollouts);
  log.bonus_active = shaping.bonus_active;

  auto buffers = rollout::collect(workers_, cfg_.workers, actor_, critic_, vnorm_,
                                  opponent, shaping, rollout_index_);
  log.summary = rollout::summarize(buffers);

  const std::uint64_t stepped = cfg_.workers.num_workers * cfg_.workers.steps_per_worker;
  env_steps_ += stepped;
  phase_accounts_.back().env_steps += stepped;
  log.env_steps = env_steps_;

  feed_window(buffers, vs_snapshot, opponent_id, choice.strength);
  log.window_size = phase_.window.size();
  log.window_win_rate = phase_.win_rate();
  log.threshold = league::threshold(phase_, cfg_.curriculum);

  auto batch =
      rollout::merge(std::move(buffers), cfg_.train.gamma, cfg_.train.lambda_gae);
  batch.rollout_index = rollout_index_;

  {
    std::vector<double> values;
    values.reserve(batch.size());
    for (const auto& t : batch.transitions) values.push_back(t.value);
    log.explained_variance = policy::explained_variance(batch.returns, values);
  }

  // normalizer sees the new raw targets before the critic regresses them
  vnorm_.observe(batch.returns);
  log.value_mean = vnorm_.mean();
  log.value_std = vnorm_.stddev();

  update_policy(batch, log);

  // side networks train from the start so they have settled once the
  // warm-up gate opens
  if (ssir_) {
    std::vector<std::size_t> all(batch.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    log.side_loss = ssir_->update(batch, all, cfg_.train.lr_critic);
  } else if (rnd_) {
    std::vector<std::vector<double>> states;
    states.reserve(batch.size());
    for (const auto& t : batch.transitions) states.push_back(t.state);
    log.side_loss = rnd_->update(states, cfg_.train.lr_critic);
  }

  if (league::advance_ready(phase_, cfg_.curriculum)) {
    pool_.snapshot(actor_, league::phase_label(phase_), env_steps_);
    league::advance(phase_, cfg_.curriculum);
    log.advanced = true;
    phase_accounts_.push_back({league::phase_label(phase_), 0, 0.0});
  }

  ++rollout_index_;

  const auto tock = std::chrono::steady_clock::now();
  const double seconds = std::chrono::duration<double>(tock - tick).count();
  run_elapsed_seconds_ += seconds;
  // the step's wall time belongs to the phase it ran under
  auto& account =
      log.advanced ? phase_accounts_[phase_accounts_.size() - 2] : phase_accounts_.back();
  account.elapsed_seconds += seconds;

  append_logs(log);
  if (rollout_index_ % cfg_.checkpoint_every_rollouts == 0) save_checkpoint();

  last_log_ = log;
  return last_log_;
}

void Trainer::append_logs(const RolloutLog& log) {
  nlohmann::json j;
  j["rollout"] = log.rollout;
  j["env_steps"] = log.env_steps;
  j["phase"] = log.phase;
  j["scenario"] = log.scenario_id;
  j["opponent"] = log.opponent;
  j["opponent_strength"] = log.opponent_strength;
  j["episodes"] = log.summary.completed;
  j["wins"] = log.summary.wins;
  j["draws"] = log.summary.draws;
  j["losses"] = log.summary.losses;
  j["rollout_win_rate"] = log.summary.win_rate;
  j["mean_reward"] = log.summary.mean_reward;
  j["transitions"] = log.summary.transitions;
  j["window"] = log.window_size;
  j["win_rate"] = log.window_win_rate;
  j["threshold"] = log.threshold;
  j["objective"] = log.actor_stats.objective;
  j["surrogate"] = log.actor_stats.surrogate;
  j["entropy"] = log.actor_stats.entropy;
  j["clip_fraction"] = log.actor_stats.clip_fraction;
  j["approx_kl"] = log.actor_stats.approx_kl;
  j["actor_grad_norm"] = log.actor_grad_norm;
  j["critic_loss"] = log.critic_loss;
  j["critic_grad_norm"] = log.critic_grad_norm;
  j["explained_variance"] = log.explained_variance;
  j["value_mean"] = log.value_mean;
  j["value_std"] = log.value_std;
  j["bonus_active"] = log.bonus_active;
  j["side_loss"] = log.side_loss;
  j["advanced"] = log.advanced;
  metrics_ << j.dump() << "\n";
  metrics_.flush();

  progress_ << log.phase << "," << log.rollout << "," << log.env_steps << ","
            << std::fixed << std::setprecision(3) << run_elapsed_seconds_
            << std::defaultfloat << std::setprecision(10) << "," << log.window_win_rate
            << "," << log.threshold << "," << (log.advanced ? 1 : 0) << "\n";
  progress_.flush();
}

RunStatus Trainer::current_status() const {
  RunStatus s;
  s.seed = cfg_.seed;
  s.variant = rewards::variant_name(cfg_.variant);
  s.players_per_team = cfg_.players_per_team;
  s.rollout_index = rollout_index_;
  s.env_steps = env_steps_;
  s.phase = phase_;
  s.pool_entries = pool_.entries();
  s.pool_next_id = pool_.next_id();
  s.phase_accounts = phase_accounts_;
  return s;
}

void Trainer::save_checkpoint() {
  pool_.save_manifest();  // flush match statistics gathered since the last write

  const std::string path = checkpoint_path();
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw std::runtime_error("trainer: cannot write " + tmp);
    write_checkpoint_front(os, current_status());
    nn::write_mlp(os, actor_);
    nn::write_mlp(os, critic_);
    nn::write_adam(os, opt_actor_);
    nn::write_adam(os, opt_critic_);
    write_moments(os, vnorm_.moments());
    binio::write_u64(os, ssir_ ? 1 : 0);
    if (ssir_) {
      nn::write_mlp(os, ssir_->net());
      nn::write_adam(os, ssir_->optimizer());
    }
    binio::write_u64(os, rnd_ ? 1 : 0);
    if (rnd_) {
      nn::write_mlp(os, rnd_->target());
      nn::write_mlp(os, rnd_->predictor());
      nn::write_adam(os, rnd_->optimizer());
      const auto& dims = rnd_->input_normalizer().dims();
      binio::write_u64(os, dims.size());
      for (const auto& m : dims) write_moments(os, m);
      write_moments(os, rnd_->bonus_normalizer());
    }
    binio::write_u64(os, workers_.size());
    for (const auto& w : workers_) w.save(os);
    for (std::uint64_t word : learner_rng_.state()) binio::write_u64(os, word);
    binio::write_u64(os, kCheckpointTrailer);
    if (!os) throw std::runtime_error("trainer: short write to " + tmp);
  }
  fs::rename(tmp, path);
}

void Trainer::load_checkpoint(const std::string& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw std::runtime_error("trainer: cannot open checkpoint " + file);

  const RunStatus s = read_checkpoint_front(is);
  if (s.seed != cfg_.seed) {
    throw std::runtime_error("checkpoint: run seed differs from the config");
  }
  if (s.variant != rewards::variant_name(cfg_.variant)) {
    throw std::runtime_error("checkpoint: reward variant differs from the config");
  }
  if (s.players_per_team != cfg_.players_per_team) {
    throw std::runtime_error("checkpoint: team size differs from the config");
  }
  rollout_index_ = s.rollout_index;
  env_steps_ = s.env_steps;
  phase_ = s.phase;
  pool_.restore(s.pool_entries, s.pool_next_id);
  phase_accounts_ = s.phase_accounts;
  if (phase_accounts_.empty()) {
    throw std::runtime_error("checkpoint: missing phase accounts");
  }

  nn::Mlp actor = nn::read_mlp(is);
  nn::Mlp critic = nn::read_mlp(is);
  if (actor.spec() != actor_.spec() || critic.spec() != critic_.spec()) {
    throw std::runtime_error("checkpoint: network shapes differ from the config");
  }
  actor_ = std::move(actor);
  critic_ = std::move(critic);
  opt_actor_ = nn::read_adam(is);
  opt_critic_ = nn::read_adam(is);
  require_adam_fits(opt_actor_, actor_, "actor");
  require_adam_fits(opt_critic_, critic_, "critic");

  {
    const RunningMoments m = read_moments(is);
    vnorm_.restore(static_cast<std::uint64_t>(m.count()), m.raw_mean(), m.raw_m2());
  }

  const bool has_ssir = binio::read_u64(is) != 0;
  if (has_ssir != (ssir_ != nullptr)) {
    throw std::runtime_error("checkpoint: intrinsic-reward section mismatch");
  }
  if (ssir_) {
    ssir_ = std::make_unique<rewards::Ssir>(nn::read_mlp(is));
    ssir_->optimizer() = nn::read_adam(is);
    require_adam_fits(ssir_->optimizer(), ssir_->net(), "intrinsic head");
  }
  const bool has_rnd = binio::read_u64(is) != 0;
  if (has_rnd != (rnd_ != nullptr)) {
    throw std::runtime_error("checkpoint: novelty section mismatch");
  }
  if (rnd_) {
    nn::Mlp target = nn::read_mlp(is);
    nn::Mlp predictor = nn::read_mlp(is);
    rnd_ = std::make_unique<rewards::Rnd>(std::move(target), std::move(predictor));
    rnd_->optimizer() = nn::read_adam(is);
    require_adam_fits(rnd_->optimizer(), rnd_->predictor(), "novelty predictor");
    const std::uint64_t dims = binio::read_u64(is);
    VectorMoments input(dims);
    for (std::uint64_t d = 0; d < dims; ++d) input.dims()[d] = read_moments(is);
    rnd_->input_normalizer() = std::move(input);
    rnd_->bonus_normalizer() = read_moments(is);
  }

  const std::uint64_t worker_count = binio::read_u64(is);
  if (worker_count != workers_.size()) {
    throw std::runtime_error("checkpoint: worker fleet size differs from the config");
  }
  for (auto& w : workers_) w.load(is);

  std::array<std::uint64_t, 4> rng_state;
  for (auto& word : rng_state) word = binio::read_u64(is);
  learner_rng_.set_state(rng_state);

  if (binio::read_u64(is) != kCheckpointTrailer || !is) {
    throw std::runtime_error("checkpoint: truncated or corrupt file");
  }
  opponent_cache_.clear();
}

void Trainer::write_phase_report() {
  std::ofstream report(cfg_.output_dir + "/phase_report.csv");
  report << "phase,env_steps,elapsed_seconds\n";
  report << std::fixed << std::setprecision(3);
  for (const auto& a : phase_accounts_) {
    report << a.label << "," << a.env_steps << "," << a.elapsed_seconds << "\n";
  }
}

TrainOutcome Trainer::run() {
  while (!budget_exhausted()) step_rollout();
  if (rollout_index_ > 0) save_checkpoint();
  write_phase_report();

  TrainOutcome out;
  out.rollouts = rollout_index_;
  out.env_steps = env_steps_;
  out.final_phase = league::phase_label(phase_);
  if (rollout_index_ > 0) out.checkpoint_file = checkpoint_path();
  return out;
}

TrainOutcome train(const RunConfig& cfg, const std::string& resume_dir) {
  if (resume_dir.empty()) {
    Trainer trainer(cfg);
    return trainer.run();
  }
  Trainer trainer(cfg, resume_dir);
  return trainer.run();
}

}  // namespace kickoff::driver
