#ifndef KICKOFF_EVAL_EVAL_HPP_
#define KICKOFF_EVAL_EVAL_HPP_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "kickoff/env/types.hpp"
#include "kickoff/nn/mlp.hpp"

namespace kickoff::eval {

// Per-match football counters from the evaluated (home) side's perspective.
struct MatchStats {
  std::uint64_t total_passes = 0;
  std::uint64_t good_passes = 0;
  std::uint64_t bad_passes = 0;
  std::uint64_t total_shots = 0;
  std::uint64_t good_shots = 0;
  std::uint64_t bad_shots = 0;
  std::uint64_t possession_steps = 0;  // steps with a home player on the ball
  std::uint64_t interceptions_made = 0;
  std::uint64_t times_intercepted = 0;
  std::uint64_t goals_for = 0;
  std::uint64_t goals_against = 0;

  void validate() const;  // counter algebra; throws logic_error on violation
};

// Stable metric ordering shared by reports and CSV columns.
std::vector<std::string> metric_names();
std::vector<double> metric_values(const MatchStats& stats);

struct EvalReport {
  std::size_t matches = 0;
  std::string opponent;  // e.g. "heuristic-0.6"
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> metrics;  // metric_names()
  std::vector<double> iqm_values;
  std::vector<double> std_values;       // population std over all matches
  std::vector<MatchStats> per_match;    // seed order, for per-match CSVs
};

// Interquartile mean: drop the lowest and highest floor(n/4) values, then
// average what remains.
double iqm(std::vector<double> values);

double population_std(std::span<const double> values);

// One full match of the given scenario: the snapshot controls home, the
// scripted side plays away at `opponent_strength`. Deterministic in
// (parameters, scenario, seed); never mutates the snapshot.
MatchStats play_match(const nn::Mlp& actor, double opponent_strength,
                      const env::ScenarioConfig& scenario, std::uint64_t seed);

// Plays one match per seed (in parallel) and aggregates.
EvalReport run_evaluation(const nn::Mlp& actor, double opponent_strength,
                          const env::ScenarioConfig& scenario,
                          std::span<const std::uint64_t> seeds);

// One row per match, one column per metric, plus the seed.
void write_match_csv(std::ostream& os, std::span<const MatchStats> stats,
                     std::span<const std::uint64_t> seeds);

// Two-row aggregate (IQM + std) in the same column order. Multi-group
// report files pass include_header = false after the first group.
void write_report_csv(std::ostream& os, const EvalReport& report,
                      bool include_header = true);

}  // namespace kickoff::eval

#endif  // KICKOFF_EVAL_EVAL_HPP_
