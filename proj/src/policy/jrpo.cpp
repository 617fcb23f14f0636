#include "kickoff/policy/jrpo.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "kickoff/nn/categorical.hpp"

namespace kickoff::policy {

ActResult act(const nn::Mlp& actor, const std::vector<std::vector<double>>& observations,
              Rng& rng) {
  ActResult out;
  out.actions.reserve(observations.size());
  out.log_probs.reserve(observations.size());
  for (const auto& obs : observations) {
    const auto logits = actor.forward(obs);
    const auto pick = nn::sample_categorical(logits, rng);
    out.actions.push_back(static_cast<int>(pick.index));
    out.log_probs.push_back(pick.log_prob);
  }
  return out;
}

double joint_log_prob(std::span<const double> per_agent_log_probs) {
  return std::accumulate(per_agent_log_probs.begin(), per_agent_log_probs.end(), 0.0);
}

JrpoStats jrpo_objective(const nn::Mlp& actor, const RolloutBatch& batch,
                         std::span<const std::size_t> timesteps, double eps_clip,
                         double beta_entropy, bool normalize_advantages,
                         std::span<double> grad_out) {
  batch.require_advantages();
  if (timesteps.empty()) throw std::invalid_argument("empty minibatch");
  if (grad_out.size() != actor.parameter_count()) {
    throw std::invalid_argument("gradient buffer size mismatch");
  }
  std::fill(grad_out.begin(), grad_out.end(), 0.0);

  const std::size_t t_count = timesteps.size();
  std::vector<double> adv(t_count);
  for (std::size_t k = 0; k < t_count; ++k) adv[k] = batch.advantages[timesteps[k]];
  if (normalize_advantages) {
    const double mean = std::accumulate(adv.begin(), adv.end(), 0.0) /
                        static_cast<double>(t_count);
    double var = 0.0;
    for (double a : adv) var += (a - mean) * (a - mean);
    var /= static_cast<double>(t_count);
    const double denom = std::sqrt(var) + 1e-8;
    for (double& a : adv) a = (a - mean) / denom;
  }

  const double scale = 1.0 / static_cast<double>(t_count);
  JrpoStats stats;
  std::size_t clipped_steps = 0;

  std::vector<double> dlogits;
  // The joint ratio needs every agent's new log-prob before any gradient
  // can flow, so per-agent caches are kept for the whole timestep.
  std::vector<nn::ForwardCache> caches;
  std::vector<std::vector<double>> lsms;

  for (std::size_t k = 0; k < t_count; ++k) {
    const Transition& tr = batch.transitions[timesteps[k]];
    const std::size_t n = tr.actions.size();
    if (tr.agent_obs.size() != n || tr.old_log_probs.size() != n) {
      throw std::invalid_argument("transition agent fields disagree");
    }
    caches.resize(n);
    lsms.resize(n);

    double joint_new = 0.0;
    double joint_old = 0.0;
    double joint_entropy = 0.0;
    std::vector<double> agent_entropy(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto logits = actor.forward(tr.agent_obs[i], caches[i]);
      lsms[i] = nn::log_softmax(logits);
      joint_new += lsms[i][static_cast<std::size_t>(tr.actions[i])];
      joint_old += tr.old_log_probs[i];
      double h = 0.0;
      for (double l : lsms[i]) h -= std::exp(l) * l;
      agent_entropy[i] = h;
      joint_entropy += h;
    }

    const double rho = std::exp(joint_new - joint_old);
    const double unclipped = rho * adv[k];
    const double clipped = std::clamp(rho, 1.0 - eps_clip, 1.0 + eps_clip) * adv[k];
    stats.surrogate += std::min(unclipped, clipped);
    stats.entropy += joint_entropy;
    stats.approx_kl += joint_old - joint_new;
    if (clipped < unclipped) ++clipped_steps;

    // d(min term)/d(joint_new): rho*adv on the unclipped branch, 0 when the
    // clipped candidate is strictly smaller (then rho sits outside the band).
    const double g_joint = (unclipped <= clipped) ? rho * adv[k] : 0.0;

    for (std::size_t i = 0; i < n; ++i) {
      const auto& l = lsms[i];
      dlogits.assign(l.size(), 0.0);
      const auto a = static_cast<std::size_t>(tr.actions[i]);
      for (std::size_t j = 0; j < l.size(); ++j) {
        const double p = std::exp(l[j]);
        const double d_logp = (j == a ? 1.0 : 0.0) - p;
        const double d_ent = -p * (l[j] + agent_entropy[i]);
        dlogits[j] = scale * (g_joint * d_logp + beta_entropy * d_ent);
      }
      actor.backward(caches[i], dlogits, grad_out);
    }
  }

  stats.surrogate *= scale;
  stats.entropy *= scale;
  stats.approx_kl *= scale;
  stats.clip_fraction = static_cast<double>(clipped_steps) * scale;
  stats.objective = stats.surrogate + beta_entropy * stats.entropy;
  return stats;
}

double critic_loss(const nn::Mlp& critic, const RolloutBatch& batch,
                   std::span<const std::size_t> timesteps, const ValueNormalizer& norm,
                   std::span<double> grad_out) {
  batch.require_advantages();
  if (timesteps.empty()) throw std::invalid_argument("empty minibatch");
  if (grad_out.size() != critic.parameter_count()) {
    throw std::invalid_argument("gradient buffer size mismatch");
  }
  std::fill(grad_out.begin(), grad_out.end(), 0.0);

  const double scale = 1.0 / static_cast<double>(timesteps.size());
  double mse = 0.0;
  nn::ForwardCache cache;
  for (std::size_t t : timesteps) {
    const auto v = critic.forward(batch.transitions[t].state, cache);
    const double err = v[0] - norm.normalize(batch.returns[t]);
    mse += err * err;
    const double dy[1] = {2.0 * err * scale};
    critic.backward(cache, dy, grad_out);
  }
  return mse * scale;
}

double explained_variance(std::span<const double> returns, std::span<const double> values) {
  if (returns.size() != values.size() || returns.empty()) {
    throw std::invalid_argument("explained_variance input lengths disagree");
  }
  const auto n = static_cast<double>(returns.size());
  double mean_r = 0.0;
  for (double r : returns) mean_r += r;
  mean_r /= n;
  double var_r = 0.0, var_e = 0.0;
  double mean_e = 0.0;
  for (std::size_t i = 0; i < returns.size(); ++i) mean_e += returns[i] - values[i];
  mean_e /= n;
  for (std::size_t i = 0; i < returns.size(); ++i) {
    var_r += (returns[i] - mean_r) * (returns[i] - mean_r);
    const double e = returns[i] - values[i];
    var_e += (e - mean_e) * (e - mean_e);
  }
  if (var_r < 1e-12) return 0.0;
  return 1.0 - var_e / var_r;
}

std::vector<std::size_t> shuffled_indices(std::size_t n, Rng& rng) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    std::swap(idx[i - 1], idx[rng.uniform_index(i)]);
  }
  return idx;
}

}  // namespace kickoff::policy
