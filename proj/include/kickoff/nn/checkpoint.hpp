#ifndef KICKOFF_NN_CHECKPOINT_HPP_
#define KICKOFF_NN_CHECKPOINT_HPP_

#include <istream>
#include <ostream>

#include "kickoff/nn/adam.hpp"
#include "kickoff/nn/mlp.hpp"

namespace kickoff::nn {

// Binary (little-endian, f64) stream serialization. Round-trips are
// bit-identical. Higher-level files wrap these with their own magic/version.

void write_mlp(std::ostream& os, const Mlp& mlp);
Mlp read_mlp(std::istream& is);

void write_adam(std::ostream& os, const Adam& adam);
Adam read_adam(std::istream& is);

}  // namespace kickoff::nn

#endif  // KICKOFF_NN_CHECKPOINT_HPP_
