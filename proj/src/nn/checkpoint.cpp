#include "kickoff/nn/checkpoint.hpp"

#include <stdexcept>

#include "kickoff/common/binio.hpp"

namespace kickoff::nn {

void write_mlp(std::ostream& os, const Mlp& mlp) {
  const MlpSpec& spec = mlp.spec();
  binio::write_u64(os, spec.layer_sizes.size());
  for (std::size_t s : spec.layer_sizes) binio::write_u64(os, s);
  binio::write_u64(os, static_cast<std::uint64_t>(spec.output));
  binio::write_f64(os, spec.output_gain);
  binio::write_u64(os, mlp.version());
  binio::write_f64_span(os, mlp.parameters());
}

Mlp read_mlp(std::istream& is) {
  MlpSpec spec;
  const std::uint64_t n = binio::read_u64(is);
  if (n < 2 || n > 64) throw std::runtime_error("checkpoint: implausible layer count");
  spec.layer_sizes.resize(n);
  for (auto& s : spec.layer_sizes) s = binio::read_u64(is);
  spec.output = static_cast<Activation>(binio::read_u64(is));
  spec.output_gain = binio::read_f64(is);
  const std::uint64_t version = binio::read_u64(is);
  Mlp mlp(spec);
  auto params = binio::read_f64_vec(is);
  if (params.size() != mlp.parameter_count())
    throw std::runtime_error("checkpoint: parameter count mismatch");
  auto dst = mlp.mutable_parameters();
  std::copy(params.begin(), params.end(), dst.begin());
  mlp.set_version(version);
  return mlp;
}

void write_adam(std::ostream& os, const Adam& adam) {
  binio::write_f64(os, adam.config().beta1);
  binio::write_f64(os, adam.config().beta2);
  binio::write_f64(os, adam.config().eps);
  binio::write_u64(os, adam.steps());
  binio::write_u64(os, adam.rejected());
  binio::write_f64_span(os, adam.m());
  binio::write_f64_span(os, adam.v());
}

Adam read_adam(std::istream& is) {
  AdamConfig cfg;
  cfg.beta1 = binio::read_f64(is);
  cfg.beta2 = binio::read_f64(is);
  cfg.eps = binio::read_f64(is);
  const std::uint64_t t = binio::read_u64(is);
  const std::uint64_t rejected = binio::read_u64(is);
  auto m = binio::read_f64_vec(is);
  auto v = binio::read_f64_vec(is);
  if (m.size() != v.size()) throw std::runtime_error("checkpoint: adam moment mismatch");
  Adam adam(m.size(), cfg);
  adam.restore(t, rejected, m, v);
  return adam;
}

}  // namespace kickoff::nn
