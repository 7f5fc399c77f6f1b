#include "supertask/convergence.hpp"

#include <algorithm>
#include <stdexcept>

namespace supertask {

const char* verdict_name(ConvergenceVerdict verdict) {
  switch (verdict) {
    case ConvergenceVerdict::Converged:
      return "converged";
    case ConvergenceVerdict::Oscillating:
      return "oscillating";
    case ConvergenceVerdict::Undecided:
      return "undecided";
  }
  return "undecided";
}

namespace {

// Exact mean; summing over a running common denominator keeps the
// denominator at the lcm of the inputs instead of their product.
Rat exact_mean(const std::vector<Rat>& seq) {
  mpz_class common = 1;
  for (const Rat& q : seq) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), q.get_den().get_mpz_t());
  mpz_class sum = 0;
  for (const Rat& q : seq) {
    mpz_class scaled = common / q.get_den();
    sum += q.get_num() * scaled;
  }
  Rat mean(sum, common);
  mean.canonicalize();
  mean /= static_cast<unsigned long>(seq.size());
  return mean;
}

}  // namespace

SequenceDiagnostics diagnose(const std::vector<Rat>& seq, const Rat& window_fraction,
                             const Rat& tolerance, std::string source) {
  if (seq.empty()) throw std::domain_error("cannot diagnose an empty sequence");
  if (window_fraction <= 0 || window_fraction > 1)
    throw std::invalid_argument("window fraction must lie in (0, 1]");
  if (tolerance < 0) throw std::invalid_argument("tolerance must be nonnegative");

  SequenceDiagnostics diag;
  diag.source = std::move(source);
  diag.count = seq.size();
  diag.window_fraction = window_fraction;
  diag.tolerance = tolerance;

  // ceil(fraction * count), exactly.
  mpz_class scaled_num = window_fraction.get_num() * static_cast<unsigned long>(seq.size());
  mpz_class window_size = (scaled_num + window_fraction.get_den() - 1) / window_fraction.get_den();
  diag.window_count = std::max<std::size_t>(1, window_size.get_ui());

  const std::size_t begin = seq.size() - diag.window_count;
  diag.liminf_estimate = seq[begin];
  diag.limsup_estimate = seq[begin];
  for (std::size_t i = begin + 1; i < seq.size(); ++i) {
    if (seq[i] < diag.liminf_estimate) diag.liminf_estimate = seq[i];
    if (seq[i] > diag.limsup_estimate) diag.limsup_estimate = seq[i];
  }
  diag.cesaro_mean = exact_mean(seq);
  diag.value = (diag.liminf_estimate + diag.limsup_estimate) / 2;

  const Rat spread = diag.limsup_estimate - diag.liminf_estimate;
  if (spread <= tolerance) {
    diag.verdict = ConvergenceVerdict::Converged;
    return diag;
  }

  // Wide band. If the newest half of the window still covers (most of) the
  // band, the sequence is genuinely bouncing; if the band tightens towards
  // the end, the window cannot separate slow convergence from drift, and no
  // guess is made.
  const std::size_t mid = begin + diag.window_count / 2;
  Rat late_min = seq[mid];
  Rat late_max = seq[mid];
  for (std::size_t i = mid + 1; i < seq.size(); ++i) {
    if (seq[i] < late_min) late_min = seq[i];
    if (seq[i] > late_max) late_max = seq[i];
  }
  const Rat late_spread = late_max - late_min;
  diag.verdict = 2 * late_spread > spread ? ConvergenceVerdict::Oscillating
                                          : ConvergenceVerdict::Undecided;
  return diag;
}

}  // namespace supertask
