#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gowers/common.hpp"

namespace gowers {

// A binary word, most significant bit first.  Patterns for the
// pattern-counting sequences must begin and end with 1.
struct BitWord {
  std::vector<std::uint8_t> bits;

  static std::optional<BitWord> parse(std::string_view text);
  std::size_t length() const { return bits.size(); }
  bool valid_pattern() const;
  std::uint64_t value() const;  // the word read as an integer
  std::string str() const;
  bool operator==(const BitWord&) const = default;
};

// Signed LSB-peeling step: a_q(2n + b) = sign * a_next(n).
struct KernelStep {
  int sign;
  int next;
};

// A +-1-valued 2-automatic sequence a(n) = (-1)^{f_pi(n)}, where f_pi counts
// (overlapping) occurrences of the word pi in the binary expansion of n.
// pi = 1 gives the Thue-Morse sequence, pi = 11 the Rudin-Shapiro sequence.
//
// The sign-normalized 2-kernel is materialized at construction: every
// subsequence n -> a(2^l n + m) equals sign * chi(n mod 2^{p-1}) * a(n) for
// some character table chi with chi(0) = +1, so kernel elements are chi
// tables and equality is table equality.  Element 0 is the sequence itself.
class AutomaticSequence {
 public:
  static AutomaticSequence thue_morse();
  static AutomaticSequence rudin_shapiro();
  static AutomaticSequence pattern(const BitWord& word,
                                   std::size_t kernel_cap = kDefaultKernelCap);
  // Accepts "tm", "rs", or "pattern:<bits>".
  static AutomaticSequence from_id(std::string_view id,
                                   std::size_t kernel_cap = kDefaultKernelCap);

  const std::string& id() const { return id_; }
  const BitWord& pattern_word() const { return word_; }
  std::size_t pattern_length() const { return word_.length(); }

  int eval(std::uint64_t n) const { return eval_element(0, n); }
  int eval_element(int elem, std::uint64_t n) const;
  // Same value computed by stepping through the kernel bit by bit; kept as an
  // independent route for the step-soundness checks.
  int eval_element_peeling(int elem, std::uint64_t n) const;
  std::uint64_t occurrences(std::uint64_t n) const;

  // Values on [0, n) in O(n).
  std::vector<std::int8_t> block(std::uint64_t n) const;
  std::vector<std::int8_t> element_block(int elem, std::uint64_t n) const;

  int kernel_size() const { return static_cast<int>(tables_.size()); }
  KernelStep lsb_step(int elem, int bit) const {
    return steps_[2 * elem + bit];
  }
  // chi over residues mod 2^{p-1}; entries +-1, entry 0 is +1.
  const std::vector<std::int8_t>& element_table(int elem) const {
    return tables_[elem];
  }
  std::string element_name(int elem) const;
  std::optional<int> element_by_name(std::string_view name) const;

  // Re-verifies by evaluation that every step image satisfies
  // a_q(2n + b) = sign * a_q'(n) for all n < bound.
  bool check_kernel_symmetry(std::uint64_t bound = 1ull << 12) const;

  bool operator==(const AutomaticSequence& other) const {
    return word_ == other.word_;
  }

  static constexpr std::size_t kDefaultKernelCap = 1u << 16;
  static constexpr std::size_t kMaxPatternLength = 12;

 private:
  explicit AutomaticSequence(BitWord word, std::size_t kernel_cap);

  BitWord word_;
  std::string id_;
  std::uint64_t pattern_value_ = 0;  // pi as an integer
  std::uint64_t residue_mod_ = 1;    // 2^{p-1}
  std::uint64_t window_mask_ = 0;    // 2^p - 1
  std::vector<std::vector<std::int8_t>> tables_;
  std::vector<KernelStep> steps_;  // [2*elem + bit]
};

// Count of (overlapping) occurrences of `word` in the binary expansion of n.
// Rejects words that do not begin and end with 1.
std::uint64_t pattern_occurrences(const BitWord& word, std::uint64_t n);

}  // namespace gowers
