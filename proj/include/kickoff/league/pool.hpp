#ifndef KICKOFF_LEAGUE_POOL_HPP_
#define KICKOFF_LEAGUE_POOL_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "kickoff/nn/mlp.hpp"

namespace kickoff::league {

// One frozen policy snapshot on disk, plus the running score of the live
// policy against it (feeds prioritized opponent sampling).
struct PoolEntry {
  std::uint64_t id = 0;
  std::string file;   // policy parameters, binary
  std::string label;  // phase that produced it, e.g. "curriculum-3"
  std::uint64_t created_env_steps = 0;
  std::uint64_t wins = 0;   // live policy's wins vs this entry
  std::uint64_t games = 0;

  bool rated() const { return games > 0; }
  double rate() const {
    return rated() ? static_cast<double>(wins) / static_cast<double>(games) : 0.5;
  }
};

// Append-only snapshot collection. Files are immutable once written; the
// manifest carries the entry list and match statistics and is rewritten on
// every snapshot (and on demand for checkpoints).
class PolicyPool {
 public:
  PolicyPool() = default;
  explicit PolicyPool(std::string directory);

  const std::string& directory() const { return dir_; }
  const std::vector<PoolEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }
  std::uint64_t next_id() const { return next_id_; }
  const PoolEntry& latest() const;

  const PoolEntry* find(std::uint64_t id) const;

  // Writes the parameters next to the manifest, verifies them by reloading,
  // and appends the entry. On any failure the pool is left unchanged.
  const PoolEntry& snapshot(const nn::Mlp& policy, const std::string& label,
                            std::uint64_t created_env_steps);

  nn::Mlp load(const PoolEntry& entry) const;

  void record_match(std::uint64_t id, bool live_policy_won);

  void save_manifest() const;
  void load_manifest();  // replaces current entries from <dir>/manifest.json

  // Resets the pool to a checkpointed entry list (authoritative over the
  // manifest, which may be newer) and persists it. Files are not touched.
  void restore(std::vector<PoolEntry> entries, std::uint64_t next_id);

 private:
  std::string manifest_path() const;

  std::string dir_;
  std::vector<PoolEntry> entries_;
  std::uint64_t next_id_ = 1;
};

}  // namespace kickoff::league

#endif  // KICKOFF_LEAGUE_POOL_HPP_
