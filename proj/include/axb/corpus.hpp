#pragma once
#include <cstdint>

#include "axb/grid_function.hpp"

namespace axb {

// Deterministic window-supported test functions: seeded mixtures of box
// indicators, Gaussian bumps and checkerboard patterns, with optional complex
// phases.  The underlying function is analytic in (x, t) and independent of
// the lattice, so re-rendering at a finer spacing refines the same function.
GridFunction corpus_function(const LatticeSpec& lat, std::uint64_t seed, int index,
                             bool complex_phases = true);

// Scalar evaluation of the same mixture at an arbitrary point.
cplx corpus_value(const CZSet& window, std::uint64_t seed, int index, const GroupPoint& p,
                  bool complex_phases = true);

}  // namespace axb
