#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gowers/norms.hpp"
#include "gowers/seq.hpp"
#include "gowers/spectral.hpp"
#include "gowers/walk.hpp"

namespace gowers {

struct APCountReport {
  std::string seq;
  std::uint64_t n = 0;
  int k = 0;
  long long count = 0;     // progressions with all terms in the +1 set, d >= 1
  long long total = 0;     // all k-term progressions inside [0, n)
  double expected = 0.0;   // 2^{-k} * total
  double deviation = 0.0;  // count - expected
};

APCountReport ap_count(const AutomaticSequence& seq, std::uint64_t n, int k,
                       const EnumLimits& limits = {});

struct ExpSumReport {
  std::string seq;
  std::uint64_t n = 0;
  std::uint64_t grid = 0;
  double sup = 0.0;        // max over alpha = j/grid of |sum_{m<n} a(m) e(alpha m)|
  double sup_alpha = 0.0;  // the maximizing alpha (smallest j on ties)
  double exponent = 0.0;   // normalization exponent
  double normalized = 0.0; // sup / n^exponent
};

// Grid maximum of the twisted sum; grid = 0 picks 8n.  The per-point sums are
// evaluated by the halving recursion over the kernel, O(grid * log n) total.
ExpSumReport exp_sum(const AutomaticSequence& seq, std::uint64_t n,
                     std::uint64_t grid = 0, double exponent = 0.0);

// Direct O(n) evaluation of sum_{m<n} a(m) e(alpha m); the independent route
// behind exp_sum.
std::complex<double> twisted_sum(const AutomaticSequence& seq, std::uint64_t n,
                                 double alpha);

// Exact sum_{m < count} a(step m + offset).
long long progression_sum(const AutomaticSequence& seq, std::uint64_t step,
                          std::uint64_t offset, std::uint64_t count);

struct SelfCorrelation {
  std::uint64_t m = 0;
  std::uint64_t h = 0;
  long long value = 0;
};

// Maximizes |sum_{i<m} a(i) a(i+h)| over 1 <= h <= h_max, m + h <= n.
SelfCorrelation self_correlation_scan(const AutomaticSequence& seq,
                                      std::uint64_t n, std::uint64_t h_max);

// |E_{m<n} a(m) e(p(m))| for a real polynomial (ascending coefficients).
double poly_phase_corr(const AutomaticSequence& seq, std::uint64_t n,
                       const std::vector<double>& coeffs);

struct ConjectureRow {
  std::string pattern;
  bool ok = false;
  std::string error;
  int kernel_size = 0;
  bool kernel_symmetric = false;
  double max_linear_corr = 0.0;  // max over q <= q_max, r < q of |E a(qn+r)|
  std::uint64_t argmax_q = 0;
  std::uint64_t argmax_r = 0;
  std::vector<std::pair<int, double>> norms;  // (level, U^s norm on [2^level])
  GraphProperties graph;
  double lambda2 = 0.0;
  double c = 0.0;
};

// Evidence table: linear correlations, norm ladder, walk properties and
// spectral rate for each pattern sequence.
std::vector<ConjectureRow> conjecture_scan(const std::vector<BitWord>& patterns,
                                           int s, std::uint64_t n,
                                           std::uint64_t q_max,
                                           const EnumLimits& limits = {});

}  // namespace gowers
