#pragma once

#include "regen/rng.hpp"

namespace regen {

using State = double;

// A Markov kernel P together with a one-step minorization
//
//   P(x, .) >= beta * 1(x in J) * nu(.)
//
// and the density ratio beta * nu(dy) / P(x, dy) used to recover the
// regeneration indicators of the split chain from a trajectory of P. The
// residual kernel is never sampled.
//
// Implementations are immutable after construction; every sampling member
// takes the caller's randomness stream, so a kernel can be shared by any
// number of concurrent replications.
class SplitKernel {
public:
  virtual ~SplitKernel() = default;

  virtual int state_dim() const { return 1; }

  // Draw from P(x, .).
  virtual State sample_transition(State x, Rng& rng) const = 0;

  // beta * nu(dy) / P(x, dy) for x in J, 0 otherwise.
  virtual double mykland_ratio(State x, State y) const = 0;

  virtual bool in_small_set(State x) const = 0;

  virtual State sample_nu(Rng& rng) const = 0;

  virtual double beta() const = 0;
};

} // namespace regen
