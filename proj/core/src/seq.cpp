#include "gowers/seq.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace gowers {

std::optional<BitWord> BitWord::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  BitWord w;
  w.bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') return std::nullopt;
    w.bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return w;
}

bool BitWord::valid_pattern() const {
  return !bits.empty() && bits.front() == 1 && bits.back() == 1;
}

std::uint64_t BitWord::value() const {
  std::uint64_t v = 0;
  for (auto b : bits) v = (v << 1) | b;
  return v;
}

std::string BitWord::str() const {
  std::string s;
  for (auto b : bits) s.push_back(static_cast<char>('0' + b));
  return s;
}

AutomaticSequence::AutomaticSequence(BitWord word, std::size_t kernel_cap)
    : word_(std::move(word)) {
  if (!word_.valid_pattern())
    throw std::invalid_argument("pattern must begin and end with 1");
  if (word_.length() > kMaxPatternLength)
    throw std::invalid_argument("pattern longer than supported maximum");
  const std::size_t p = word_.length();
  pattern_value_ = word_.value();
  residue_mod_ = 1ull << (p - 1);
  window_mask_ = (1ull << p) - 1;
  if (word_.str() == "1")
    id_ = "tm";
  else if (word_.str() == "11")
    id_ = "rs";
  else
    id_ = "pattern:" + word_.str();

  // Kernel closure: chi tables over residues mod 2^{p-1}, normalized
  // chi(0) = +1.  Appending bit b to a suffix u contributes a sign iff the
  // p-bit window (u << 1 | b) equals the pattern.
  const std::size_t M = residue_mod_;
  std::map<std::vector<std::int8_t>, int> seen;
  std::vector<std::int8_t> base(M, 1);
  seen.emplace(base, 0);
  tables_.push_back(base);
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    steps_.resize(std::max(steps_.size(), 2 * tables_.size()));
    for (int b = 0; b < 2; ++b) {
      std::vector<std::int8_t> raw(M);
      const auto& chi = tables_[i];
      for (std::size_t u = 0; u < M; ++u) {
        int eps = ((u << 1) | static_cast<std::uint64_t>(b)) == pattern_value_
                      ? -1
                      : 1;
        raw[u] = static_cast<std::int8_t>(chi[(2 * u + b) % M] * eps);
      }
      int sign = raw[0];
      for (auto& x : raw) x = static_cast<std::int8_t>(x * sign);
      auto it = seen.find(raw);
      int target;
      if (it == seen.end()) {
        if (tables_.size() >= kernel_cap)
          throw CapExceeded("kernel too large (cap " +
                            std::to_string(kernel_cap) + ")");
        target = static_cast<int>(tables_.size());
        seen.emplace(raw, target);
        tables_.push_back(std::move(raw));
        queue.push_back(target);
      } else {
        target = it->second;
      }
      steps_.resize(std::max(steps_.size(), 2 * tables_.size()));
      steps_[2 * i + b] = KernelStep{sign, target};
    }
  }
  steps_.resize(2 * tables_.size());
}

AutomaticSequence AutomaticSequence::thue_morse() {
  return AutomaticSequence(*BitWord::parse("1"), kDefaultKernelCap);
}

AutomaticSequence AutomaticSequence::rudin_shapiro() {
  return AutomaticSequence(*BitWord::parse("11"), kDefaultKernelCap);
}

AutomaticSequence AutomaticSequence::pattern(const BitWord& word,
                                             std::size_t kernel_cap) {
  return AutomaticSequence(word, kernel_cap);
}

AutomaticSequence AutomaticSequence::from_id(std::string_view id,
                                             std::size_t kernel_cap) {
  if (id == "tm") return thue_morse();
  if (id == "rs") return rudin_shapiro();
  constexpr std::string_view prefix = "pattern:";
  if (id.substr(0, prefix.size()) == prefix) {
    auto w = BitWord::parse(id.substr(prefix.size()));
    if (w && w->valid_pattern()) return pattern(*w, kernel_cap);
  }
  throw std::invalid_argument("unknown sequence id: " + std::string(id));
}

int AutomaticSequence::eval_element_peeling(int elem, std::uint64_t n) const {
  int sign = 1;
  int e = elem;
  while (n > 0) {
    KernelStep st = steps_[2 * e + (n & 1)];
    sign *= st.sign;
    e = st.next;
    n >>= 1;
  }
  return sign;  // every element has value +1 at 0
}

int AutomaticSequence::eval_element(int elem, std::uint64_t n) const {
  int chi = tables_[elem][n % residue_mod_];
  // base value by incremental window counting, LSB peeled
  int sign = 1;
  std::uint64_t m = n;
  while (m > 0) {
    if ((m & window_mask_) == pattern_value_) sign = -sign;
    m >>= 1;
  }
  return chi * sign;
}

std::uint64_t AutomaticSequence::occurrences(std::uint64_t n) const {
  return pattern_occurrences(word_, n);
}

std::vector<std::int8_t> AutomaticSequence::block(std::uint64_t n) const {
  std::vector<std::int8_t> a(n ? n : 0);
  if (n == 0) return a;
  a[0] = 1;
  for (std::uint64_t i = 1; i < n; ++i) {
    int flip = (i & window_mask_) == pattern_value_ ? -1 : 1;
    a[i] = static_cast<std::int8_t>(a[i >> 1] * flip);
  }
  return a;
}

std::vector<std::int8_t> AutomaticSequence::element_block(
    int elem, std::uint64_t n) const {
  auto a = block(n);
  const auto& chi = tables_[elem];
  for (std::uint64_t i = 0; i < n; ++i)
    a[i] = static_cast<std::int8_t>(a[i] * chi[i % residue_mod_]);
  return a;
}

std::string AutomaticSequence::element_name(int elem) const {
  if (id_ == "tm") return "t";
  if (id_ == "rs") return elem == 0 ? "R0" : "R1";
  return "k" + std::to_string(elem);
}

std::optional<int> AutomaticSequence::element_by_name(
    std::string_view name) const {
  for (int e = 0; e < kernel_size(); ++e)
    if (element_name(e) == name) return e;
  // numeric index fallback
  int v = 0;
  for (char c : name) {
    if (c < '0' || c > '9') return std::nullopt;
    v = v * 10 + (c - '0');
  }
  if (!name.empty() && v < kernel_size()) return v;
  return std::nullopt;
}

bool AutomaticSequence::check_kernel_symmetry(std::uint64_t bound) const {
  for (int e = 0; e < kernel_size(); ++e) {
    for (int b = 0; b < 2; ++b) {
      KernelStep st = lsb_step(e, b);
      for (std::uint64_t n = 0; n < bound; ++n) {
        if (eval_element(e, 2 * n + static_cast<std::uint64_t>(b)) !=
            st.sign * eval_element(st.next, n))
          return false;
      }
    }
  }
  return true;
}

std::uint64_t pattern_occurrences(const BitWord& word, std::uint64_t n) {
  if (!word.valid_pattern())
    throw std::invalid_argument("pattern must begin and end with 1");
  if (n == 0) return 0;  // the expansion of 0 is empty
  const std::size_t p = word.length();
  const std::uint64_t target = word.value();
  const std::uint64_t mask = (1ull << p) - 1;
  int len = 64 - static_cast<int>(__builtin_clzll(n));
  std::uint64_t count = 0;
  for (int shift = 0; shift + static_cast<int>(p) <= len; ++shift)
    if (((n >> shift) & mask) == target) ++count;
  return count;
}

}  // namespace gowers
