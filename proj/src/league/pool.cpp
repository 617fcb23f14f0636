#include "kickoff/league/pool.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "kickoff/nn/checkpoint.hpp"

namespace kickoff::league {

PolicyPool::PolicyPool(std::string directory) : dir_(std::move(directory)) {
  if (dir_.empty()) throw std::invalid_argument("pool: empty directory");
}

const PoolEntry& PolicyPool::latest() const {
  if (entries_.empty()) throw std::runtime_error("pool: no snapshots yet");
  return entries_.back();
}

const PoolEntry* PolicyPool::find(std::uint64_t id) const {
  for (const auto& e : entries_) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::string PolicyPool::manifest_path() const { return dir_ + "/manifest.json"; }

const PoolEntry& PolicyPool::snapshot(const nn::Mlp& policy, const std::string& label,
                                      std::uint64_t created_env_steps) {
  if (dir_.empty()) throw std::logic_error("pool: no directory configured");
  std::filesystem::create_directories(dir_);

  PoolEntry entry;
  entry.id = next_id_;
  entry.label = label;
  entry.created_env_steps = created_env_steps;
  entry.file = dir_ + "/" + std::to_string(entry.id) + "-" + label + ".policy";

  {
    std::ofstream os(entry.file, std::ios::binary);
    if (!os) throw std::runtime_error("pool: cannot write " + entry.file);
    nn::write_mlp(os, policy);
    if (!os) throw std::runtime_error("pool: short write to " + entry.file);
  }
  // paranoid reload: an unreadable snapshot must never enter the pool
  const nn::Mlp check = load(entry);
  if (check.spec() != policy.spec() ||
      !std::equal(check.parameters().begin(), check.parameters().end(),
                  policy.parameters().begin(), policy.parameters().end())) {
    throw std::runtime_error("pool: verification reload mismatch for " + entry.file);
  }

  entries_.push_back(std::move(entry));
  ++next_id_;
  save_manifest();
  return entries_.back();
}

nn::Mlp PolicyPool::load(const PoolEntry& entry) const {
  std::ifstream is(entry.file, std::ios::binary);
  if (!is) throw std::runtime_error("pool: cannot open " + entry.file);
  return nn::read_mlp(is);
}

void PolicyPool::record_match(std::uint64_t id, bool live_policy_won) {
  for (auto& e : entries_) {
    if (e.id != id) continue;
    ++e.games;
    if (live_policy_won) ++e.wins;
    return;
  }
  throw std::invalid_argument("pool: unknown entry id " + std::to_string(id));
}

void PolicyPool::save_manifest() const {
  if (dir_.empty()) throw std::logic_error("pool: no directory configured");
  std::filesystem::create_directories(dir_);
  nlohmann::json doc;
  doc["entries"] = nlohmann::json::array();
  for (const auto& e : entries_) {
    doc["entries"].push_back({{"id", e.id},
                              {"file", e.file},
                              {"label", e.label},
                              {"created_env_steps", e.created_env_steps},
                              {"wins", e.wins},
                              {"games", e.games}});
  }
  doc["next_id"] = next_id_;
  std::ofstream os(manifest_path());
  if (!os) throw std::runtime_error("pool: cannot write manifest");
  os << doc.dump(2) << "\n";
}

void PolicyPool::restore(std::vector<PoolEntry> entries, std::uint64_t next_id) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0 && entries[i].id <= entries[i - 1].id) {
      throw std::invalid_argument("pool: restored ids not increasing");
    }
  }
  if (!entries.empty() && next_id <= entries.back().id) {
    throw std::invalid_argument("pool: restored next_id conflicts with entries");
  }
  entries_ = std::move(entries);
  next_id_ = next_id;
  save_manifest();
}

void PolicyPool::load_manifest() {
  std::ifstream is(manifest_path());
  if (!is) throw std::runtime_error("pool: cannot open " + manifest_path());
  nlohmann::json doc = nlohmann::json::parse(is);
  std::vector<PoolEntry> loaded;
  for (const auto& j : doc.at("entries")) {
    PoolEntry e;
    e.id = j.at("id").get<std::uint64_t>();
    e.file = j.at("file").get<std::string>();
    e.label = j.at("label").get<std::string>();
    e.created_env_steps = j.at("created_env_steps").get<std::uint64_t>();
    e.wins = j.at("wins").get<std::uint64_t>();
    e.games = j.at("games").get<std::uint64_t>();
    if (!loaded.empty() && e.id <= loaded.back().id) {
      throw std::runtime_error("pool: manifest ids not increasing");
    }
    loaded.push_back(std::move(e));
  }
  entries_ = std::move(loaded);
  next_id_ = doc.at("next_id").get<std::uint64_t>();
  if (!entries_.empty() && next_id_ <= entries_.back().id) {
    throw std::runtime_error("pool: manifest next_id conflicts with entries");
  }
}

}  // namespace kickoff::league
