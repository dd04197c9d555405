#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gowers/common.hpp"
#include "gowers/seq.hpp"
#include "gowers/walk.hpp"

namespace gowers {

// Finite signal on [0, N); entries in {-1, 0, +1} (0 encodes restriction by
// an indicator).
struct Signal {
  std::vector<std::int8_t> values;
  std::uint64_t size() const { return values.size(); }

  static Signal of_sequence(const AutomaticSequence& seq, std::uint64_t n);
  // 1_{[begin,end)} * seq on the ambient interval [0, n).
  static Signal restricted(const AutomaticSequence& seq, std::uint64_t n,
                           std::uint64_t begin, std::uint64_t end);
  static Signal indicator(std::uint64_t n, const std::vector<std::uint64_t>& support);
  static Signal constant(std::uint64_t n, int value);
};

// Exact average: numerator over the cube count, not reduced.
struct ExactAverage {
  BigInt numerator;
  BigInt denominator;
  double value() const {
    return denominator == 0 ? 0.0 : BigRat(numerator, denominator).convert_to<double>();
  }
};

enum class NormMethod { brute, nested, dyadic };
std::string method_name(NormMethod m);

struct NormReport {
  std::string seq;  // sequence id, or "signal" for raw signals
  int s = 0;
  std::uint64_t n = 0;
  ExactAverage power;  // the 2^s-th power of the norm (a bound for dyadic)
  double norm = 0.0;
  NormMethod method = NormMethod::nested;
};

struct EnumLimits {
  std::uint64_t work_budget = kDefaultWorkBudget;
  int threads = 0;  // 0 = hardware concurrency
};

// Number of (n, h) in Z x Z^s whose cube {n + w.h} lies inside [0, N).
BigInt cube_count(std::uint64_t n, int s);

inline constexpr int kMaxNormOrder = 5;

NormReport gowers_norm(const Signal& f, int s,
                       NormMethod method = NormMethod::nested,
                       const EnumLimits& limits = {});
NormReport gowers_norm(const AutomaticSequence& seq, std::uint64_t n, int s,
                       NormMethod method = NormMethod::nested,
                       const EnumLimits& limits = {});

// Corner-labelled average specification over the domain [2^level]: one
// kernel element and one nonnegative offset per corner mask.
struct CubeSpec {
  int s = 1;
  int level = 0;
  std::vector<int> offsets;  // size 2^s
  std::vector<int> labels;   // size 2^s, kernel element indices

  static CubeSpec zero(int s, int level);
};

ExactAverage cube_average(const AutomaticSequence& seq, const CubeSpec& spec,
                          NormMethod method = NormMethod::nested,
                          const EnumLimits& limits = {});

// Signed average attached to a walk vertex: sign * A(level, labels, offsets).
BigRat vertex_average(const AutomaticSequence& seq, int s, int level,
                      const WalkVertex& v, const EnumLimits& limits = {});

// |A(level, spec) - E_e A(level-1, step(spec, e))| with the one-step vertex
// map supplying the sign bookkeeping; exact difference returned as a real.
double recursion_residual(const AutomaticSequence& seq, const CubeSpec& spec,
                          int level, const EnumLimits& limits = {});

// Dyadic interval decompositions used by the norm-decay arguments.
struct Interval {
  std::uint64_t begin;
  std::uint64_t end;
  int level;                 // length 2^level
  std::uint64_t multiplier;  // begin = multiplier * 2^level (tm style)
                             // begin = multiplier * 2^{level+1} (rs style)
};

struct Decomposition {
  std::vector<Interval> intervals;
  std::vector<std::uint64_t> remainder;  // the set J (rs style; empty for tm)
};

enum class DecomposeStyle { tm, rs };

Decomposition dyadic_decompose(std::uint64_t n, DecomposeStyle style);

}  // namespace gowers
