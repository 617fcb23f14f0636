#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kickoff/driver/config.hpp"
#include "kickoff/driver/status.hpp"
#include "kickoff/driver/trainer.hpp"

using namespace kickoff;

int main(int argc, char** argv) {
  CLI::App app{"curriculum self-play training for an N-vs-N football sim"};
  app.require_subcommand(1);

  std::string config_file, resume_dir;
  auto* train_cmd = app.add_subcommand("train", "run (or resume) a training loop");
  train_cmd->add_option("--config", config_file, "run config (TOML)")
      ->required()
      ->check(CLI::ExistingFile);
  train_cmd->add_option("--resume", resume_dir,
                        "run directory holding checkpoint.bin to continue from");

  driver::EvalRequest req;
  auto* eval_cmd = app.add_subcommand("evaluate", "play scripted-opponent matches from a checkpoint");
  eval_cmd->add_option("--checkpoint", req.checkpoint_file, "checkpoint.bin of a run")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--matches", req.matches, "matches per seed group (default 50)");
  eval_cmd->add_option("--seeds", req.seed_groups, "seed groups (default 1..5)")
      ->delimiter(',');
  eval_cmd->add_option("--strength", req.opponent_strength,
                       "scripted opponent reaction gate (default 0.6)");
  eval_cmd->add_option("--out", req.out_dir, "report directory (default <run>/eval)");

  std::string run_dir;
  auto* status_cmd = app.add_subcommand("league-status", "summarize a run directory");
  status_cmd->add_option("--run", run_dir, "training output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*train_cmd) {
      const auto cfg = driver::load_run_config(config_file);
      const auto outcome = driver::train(cfg, resume_dir);
      std::cout << "done: " << outcome.rollouts << " rollouts, " << outcome.env_steps
                << " env steps, phase " << outcome.final_phase << "\n";
      if (!outcome.checkpoint_file.empty()) {
        std::cout << "checkpoint: " << outcome.checkpoint_file << "\n";
      }
    } else if (*eval_cmd) {
      driver::run_evaluate(req);
    } else if (*status_cmd) {
      driver::write_league_status(std::cout, run_dir);
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
