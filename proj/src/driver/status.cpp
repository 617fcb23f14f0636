#include "kickoff/driver/status.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "kickoff/common/binio.hpp"
#include "kickoff/driver/config.hpp"
#include "kickoff/eval/eval.hpp"
#include "kickoff/nn/checkpoint.hpp"

namespace kickoff::driver {
namespace {

constexpr char kMagic[4] = {'K', 'C', 'K', '1'};
constexpr std::uint64_t kFormatVersion = 1;

namespace fs = std::filesystem;

}  // namespace

void write_checkpoint_front(std::ostream& os, const RunStatus& status) {
  os.write(kMagic, sizeof(kMagic));
  binio::write_u64(os, kFormatVersion);
  binio::write_u64(os, status.seed);
  binio::write_string(os, status.variant);
  binio::write_u64(os, status.players_per_team);
  binio::write_u64(os, status.rollout_index);
  binio::write_u64(os, status.env_steps);
  status.phase.save(os);
  binio::write_u64(os, status.pool_entries.size());
  for (const auto& e : status.pool_entries) {
    binio::write_u64(os, e.id);
    binio::write_string(os, e.file);
    binio::write_string(os, e.label);
    binio::write_u64(os, e.created_env_steps);
    binio::write_u64(os, e.wins);
    binio::write_u64(os, e.games);
  }
  binio::write_u64(os, status.pool_next_id);
  binio::write_u64(os, status.phase_accounts.size());
  for (const auto& a : status.phase_accounts) {
    binio::write_string(os, a.label);
    binio::write_u64(os, a.env_steps);
    // wall-clock is deliberately not persisted; see PhaseAccount
  }
}

RunStatus read_checkpoint_front(std::istream& is) {
  char magic[4] = {};
  is.read(magic, sizeof(magic));
  if (!is || std::string_view(magic, 4) != std::string_view(kMagic, 4)) {
    throw std::runtime_error("checkpoint: bad magic (not a run checkpoint)");
  }
  const std::uint64_t version = binio::read_u64(is);
  if (version != kFormatVersion) {
    throw std::runtime_error("checkpoint: unsupported format version " +
                             std::to_string(version));
  }
  RunStatus s;
  s.seed = binio::read_u64(is);
  s.variant = binio::read_string(is);
  s.players_per_team = binio::read_u64(is);
  s.rollout_index = binio::read_u64(is);
  s.env_steps = binio::read_u64(is);
  s.phase.load(is);
  const std::uint64_t entries = binio::read_u64(is);
  for (std::uint64_t i = 0; i < entries; ++i) {
    league::PoolEntry e;
    e.id = binio::read_u64(is);
    e.file = binio::read_string(is);
    e.label = binio::read_string(is);
    e.created_env_steps = binio::read_u64(is);
    e.wins = binio::read_u64(is);
    e.games = binio::read_u64(is);
    s.pool_entries.push_back(std::move(e));
  }
  s.pool_next_id = binio::read_u64(is);
  const std::uint64_t accounts = binio::read_u64(is);
  for (std::uint64_t i = 0; i < accounts; ++i) {
    PhaseAccount a;
    a.label = binio::read_string(is);
    a.env_steps = binio::read_u64(is);
    s.phase_accounts.push_back(std::move(a));
  }
  if (!is) throw std::runtime_error("checkpoint: truncated header");
  return s;
}

RunStatus read_run_status(const std::string& checkpoint_file) {
  std::ifstream is(checkpoint_file, std::ios::binary);
  if (!is) throw std::runtime_error("checkpoint: cannot open " + checkpoint_file);
  return read_checkpoint_front(is);
}

std::pair<RunStatus, nn::Mlp> read_checkpoint_actor(const std::string& checkpoint_file) {
  std::ifstream is(checkpoint_file, std::ios::binary);
  if (!is) throw std::runtime_error("checkpoint: cannot open " + checkpoint_file);
  RunStatus status = read_checkpoint_front(is);
  nn::Mlp actor = nn::read_mlp(is);
  if (!is) throw std::runtime_error("checkpoint: truncated actor parameters");
  return {std::move(status), std::move(actor)};
}

void write_league_status(std::ostream& os, const std::string& run_dir) {
  const std::string checkpoint = run_dir + "/checkpoint.bin";
  if (!fs::exists(run_dir)) {
    throw std::runtime_error("league-status: no such run directory: " + run_dir);
  }
  if (!fs::exists(checkpoint)) {
    os << "run: " << run_dir << "\n";
    os << "no checkpoint yet (the run has not finished a checkpoint cadence)\n";
    return;
  }
  const RunStatus s = read_run_status(checkpoint);

  league::CurriculumSchedule schedule;
  const std::string echo = run_dir + "/config_echo.toml";
  if (fs::exists(echo)) {
    schedule = load_run_config(echo, /*apply_env=*/false).curriculum;
  } else {
    schedule = league::default_curriculum(s.players_per_team);
  }

  os << "run: " << run_dir << "\n";
  os << "variant: " << s.variant << "  seed: " << s.seed << "  teams: "
     << s.players_per_team << "v" << s.players_per_team << "\n";
  os << "rollouts: " << s.rollout_index << "  env steps: " << s.env_steps << "\n";
  os << "phase: " << league::phase_label(s.phase) << "  (scenario "
     << league::scenario_for(s.phase, schedule).id << ")\n";
  os << std::setprecision(4);
  os << "window: " << s.phase.window.size() << "/" << schedule.window_capacity
     << "  win rate: " << s.phase.win_rate()
     << "  threshold: " << league::threshold(s.phase, schedule) << "\n";
  os << "phases passed: curriculum " << s.phase.curriculum_passed << ", challenge "
     << s.phase.challenge_passed << ", generalize " << s.phase.generalize_passed << "\n";

  os << "phase history:\n";
  for (const auto& a : s.phase_accounts) {
    os << "  " << a.label << "  steps=" << a.env_steps << "\n";
  }

  os << "pool: " << s.pool_entries.size() << " snapshot"
     << (s.pool_entries.size() == 1 ? "" : "s") << "\n";
  for (const auto& e : s.pool_entries) {
    os << "  #" << e.id << "  " << e.label << "  at_steps=" << e.created_env_steps
       << "  live_policy_record=" << e.wins << "/" << e.games << "\n";
  }
}

void run_evaluate(const EvalRequest& req) {
  if (req.matches == 0) throw std::invalid_argument("evaluate: zero matches");
  if (req.seed_groups.empty()) throw std::invalid_argument("evaluate: no seeds");

  auto [status, actor] = read_checkpoint_actor(req.checkpoint_file);
  const auto schedule = league::default_curriculum(status.players_per_team);
  const env::ScenarioConfig& scenario = schedule.selfplay;  // full-pitch match rules

  fs::path out = req.out_dir.empty()
                     ? fs::path(req.checkpoint_file).parent_path() / "eval"
                     : fs::path(req.out_dir);
  fs::create_directories(out);

  std::ofstream report(out / "report.csv");
  if (!report) throw std::runtime_error("evaluate: cannot write report.csv");

  bool first = true;
  for (std::uint64_t base : req.seed_groups) {
    Rng seeder(base, 777);
    std::vector<std::uint64_t> seeds(req.matches);
    for (auto& s : seeds) s = seeder.next_u64();

    const auto group = eval::run_evaluation(actor, req.opponent_strength, scenario, seeds);
    eval::write_report_csv(report, group, first);
    first = false;

    std::ofstream per_match(out / ("matches-" + std::to_string(base) + ".csv"));
    if (!per_match) throw std::runtime_error("evaluate: cannot write per-match csv");
    eval::write_match_csv(per_match, group.per_match, seeds);
  }
}

}  // namespace kickoff::driver
