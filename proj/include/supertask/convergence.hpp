#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "supertask/rational.hpp"

namespace supertask {

enum class ConvergenceVerdict {
  Converged,    // trailing window fits inside the tolerance band
  Oscillating,  // window spread persists with no dominant drift
  Undecided,    // a drift trend dominates; no extrapolation is attempted
};

const char* verdict_name(ConvergenceVerdict verdict);

// Window diagnostics for a density sequence. A bounded sequence need not
// converge and no computable functional can pick a limit for it, so the
// non-convergent cases report their oscillation band instead of a value.
struct SequenceDiagnostics {
  std::string source;
  std::size_t count = 0;
  std::size_t window_count = 0;
  Rat window_fraction;
  Rat tolerance;
  Rat liminf_estimate;  // min over the trailing window
  Rat limsup_estimate;  // max over the trailing window
  Rat cesaro_mean;      // exact mean of the whole sequence
  ConvergenceVerdict verdict = ConvergenceVerdict::Undecided;
  Rat value;            // midpoint of the window band; the limit estimate when converged
};

// window_fraction in (0, 1] selects the trailing ceil(fraction * count)
// entries. Converged means (max - min) over that window is <= tolerance.
SequenceDiagnostics diagnose(const std::vector<Rat>& seq, const Rat& window_fraction,
                             const Rat& tolerance, std::string source = {});

}  // namespace supertask
