#include "gowers/norms.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

#include "gowers/parallel.hpp"

namespace gowers {

namespace {

using Array = std::vector<std::int8_t>;

void validate_order(int s) {
  if (s < 1 || s > kMaxNormOrder)
    throw std::invalid_argument("s out of supported range [1, " +
                                std::to_string(kMaxNormOrder) + "]");
}

long long checked_sum(const Array& g) {
  long long t = 0;
  for (auto v : g) t += v;
  return t;
}

// sum_{n,h} prod_w g_w(n + w.h) over a common window, by pairing the last
// coordinate: level k reduces 2^k functions to 2^{k-1} products per shift h.
long long nested_recurse(std::vector<Array>& gs) {
  const std::size_t half = gs.size() / 2;
  const long long w = static_cast<long long>(gs[0].size());
  if (gs.size() == 2) return checked_sum(gs[0]) * checked_sum(gs[1]);
  long long total = 0;
  std::vector<Array> next(half);
  for (long long h = -(w - 1); h < w; ++h) {
    const long long len = w - std::llabs(h);
    for (std::size_t i = 0; i < half; ++i) {
      next[i].resize(static_cast<std::size_t>(len));
      const std::int8_t* a = gs[i].data();
      const std::int8_t* b = gs[i + half].data();
      if (h >= 0)
        for (long long x = 0; x < len; ++x)
          next[i][static_cast<std::size_t>(x)] =
              static_cast<std::int8_t>(a[x] * b[x + h]);
      else
        for (long long x = 0; x < len; ++x)
          next[i][static_cast<std::size_t>(x)] =
              static_cast<std::int8_t>(a[x - h] * b[x]);
    }
    total += nested_recurse(next);
  }
  return total;
}

long long nested_sum(const std::vector<Array>& gs, int threads) {
  if (gs.size() == 2) {
    return checked_sum(gs[0]) * checked_sum(gs[1]);
  }
  const std::size_t half = gs.size() / 2;
  const long long w = static_cast<long long>(gs[0].size());
  auto partials = map_chunks<long long>(
      -(w - 1), w, threads,
      [&gs, half, w](std::int64_t lo, std::int64_t hi, int) {
        long long total = 0;
        std::vector<Array> next(half);
        for (long long h = lo; h < hi; ++h) {
          const long long len = w - std::llabs(h);
          for (std::size_t i = 0; i < half; ++i) {
            next[i].resize(static_cast<std::size_t>(len));
            const std::int8_t* a = gs[i].data();
            const std::int8_t* b = gs[i + half].data();
            if (h >= 0)
              for (long long x = 0; x < len; ++x)
                next[i][static_cast<std::size_t>(x)] =
                    static_cast<std::int8_t>(a[x] * b[x + h]);
            else
              for (long long x = 0; x < len; ++x)
                next[i][static_cast<std::size_t>(x)] =
                    static_cast<std::int8_t>(a[x - h] * b[x]);
          }
          total += nested_recurse(next);
        }
        return total;
      });
  long long total = 0;
  for (auto p : partials) total += p;
  return total;
}

// Direct cube enumeration: loops over h, then the base point range.
long long brute_sum(const std::vector<Array>& gs, int threads) {
  const int k = [&] {
    int v = 0;
    while ((1u << v) < gs.size()) ++v;
    return v;
  }();
  const long long w = static_cast<long long>(gs[0].size());

  auto run_range = [&](std::int64_t h0lo, std::int64_t h0hi) {
    std::vector<long long> h(static_cast<std::size_t>(k), 0);
    std::vector<long long> shift(gs.size(), 0);
    long long total = 0;
    auto rec = [&](auto&& self, int level, long long neg, long long pos) -> void {
      if (level == k) {
        for (std::size_t mask = 0; mask < gs.size(); ++mask) {
          long long sh = 0;
          for (int i = 0; i < k; ++i)
            if ((mask >> i) & 1) sh += h[static_cast<std::size_t>(i)];
          shift[mask] = sh;
        }
        const long long lo = neg, hi = w - pos;
        for (long long n = lo; n < hi; ++n) {
          int prod = 1;
          for (std::size_t mask = 0; mask < gs.size(); ++mask)
            prod *= gs[mask][static_cast<std::size_t>(n + shift[mask])];
          total += prod;
        }
        return;
      }
      const long long lo = level == 0 ? h0lo : -(w - 1);
      const long long hi = level == 0 ? h0hi : w;
      for (long long v = lo; v < hi; ++v) {
        h[static_cast<std::size_t>(level)] = v;
        long long nneg = neg + (v < 0 ? -v : 0);
        long long npos = pos + (v > 0 ? v : 0);
        if (nneg + npos >= w) continue;  // no base point fits
        self(self, level + 1, nneg, npos);
      }
    };
    rec(rec, 0, 0, 0);
    return total;
  };

  if (k == 0) return checked_sum(gs[0]);
  auto partials = map_chunks<long long>(
      -(w - 1), w, threads,
      [&](std::int64_t lo, std::int64_t hi, int) { return run_range(lo, hi); });
  long long total = 0;
  for (auto p : partials) total += p;
  return total;
}

// Upper bound on the pairing recursion's inner-loop work: level s costs
// about 2^{s-1} W^2 products plus the recursive calls, which telescopes to
// under 2^s W^s for s >= 2.
BigInt nested_work_estimate(std::uint64_t w, int s) {
  BigInt est = BigInt(1) << s;
  for (int i = 0; i < s; ++i) est *= w;
  return est;
}

void check_budget(const BigInt& work, const EnumLimits& limits) {
  if (work > BigInt(limits.work_budget))
    throw BudgetExceeded("enumeration work exceeds budget (" +
                         work.str() + " > " +
                         std::to_string(limits.work_budget) + ")");
}

long long run_sum(const std::vector<Array>& gs, int s, NormMethod method,
                  const EnumLimits& limits) {
  const std::uint64_t w = gs[0].size();
  if (method == NormMethod::brute) {
    check_budget(cube_count(w, s) << s, limits);
    return brute_sum(gs, limits.threads);
  }
  check_budget(nested_work_estimate(w, s), limits);
  return nested_sum(gs, limits.threads);
}

double root_2s(double power, int s) {
  return power <= 0 ? 0.0 : std::pow(power, 1.0 / std::ldexp(1.0, s));
}

}  // namespace

Signal Signal::of_sequence(const AutomaticSequence& seq, std::uint64_t n) {
  return Signal{seq.block(n)};
}

Signal Signal::restricted(const AutomaticSequence& seq, std::uint64_t n,
                          std::uint64_t begin, std::uint64_t end) {
  Signal f{std::vector<std::int8_t>(n, 0)};
  auto blk = seq.block(std::min(n, end));
  for (std::uint64_t i = begin; i < end && i < n; ++i) f.values[i] = blk[i];
  return f;
}

Signal Signal::indicator(std::uint64_t n,
                         const std::vector<std::uint64_t>& support) {
  Signal f{std::vector<std::int8_t>(n, 0)};
  for (auto i : support)
    if (i < n) f.values[i] = 1;
  return f;
}

Signal Signal::constant(std::uint64_t n, int value) {
  return Signal{std::vector<std::int8_t>(n, static_cast<std::int8_t>(value))};
}

std::string method_name(NormMethod m) {
  switch (m) {
    case NormMethod::brute:
      return "brute";
    case NormMethod::nested:
      return "nested";
    case NormMethod::dyadic:
      return "dyadic";
  }
  return "?";
}

BigInt cube_count(std::uint64_t n, int s) {
  if (n == 0 || s < 1) throw std::invalid_argument("cube_count: need n >= 1, s >= 1");
  // #\{h : sum |h_i| = T\} by convolution, then sum (n - T) over T < n.
  std::vector<BigInt> c(n, 2);
  c[0] = 1;
  for (int i = 1; i < s; ++i) {
    std::vector<BigInt> d(n, 0);
    for (std::uint64_t t1 = 0; t1 < n; ++t1) {
      if (c[t1] == 0) continue;
      d[t1] += c[t1];
      for (std::uint64_t t2 = 1; t1 + t2 < n; ++t2) d[t1 + t2] += c[t1] * 2;
    }
    c = std::move(d);
  }
  BigInt total = 0;
  for (std::uint64_t t = 0; t < n; ++t) total += c[t] * (n - t);
  return total;
}

NormReport gowers_norm(const Signal& f, int s, NormMethod method,
                       const EnumLimits& limits) {
  validate_order(s);
  if (f.size() == 0) throw std::invalid_argument("empty signal");
  if (method == NormMethod::dyadic)
    throw std::invalid_argument("dyadic method needs a sequence, not a signal");
  for (auto v : f.values)
    if (v < -1 || v > 1) throw std::invalid_argument("signal values must be in {-1,0,1}");
  std::vector<Array> gs(1u << s, f.values);
  long long num = run_sum(gs, s, method, limits);
  NormReport rep;
  rep.seq = "signal";
  rep.s = s;
  rep.n = f.size();
  rep.power = ExactAverage{BigInt(num), cube_count(f.size(), s)};
  rep.norm = root_2s(rep.power.value(), s);
  rep.method = method;
  return rep;
}

namespace {

// Triangle-inequality upper bound over the dyadic decomposition, with exact
// per-block powers.  Valid for tm (blocks multiplicative over 2^L) and rs
// (blocks of the rs decomposition).
NormReport dyadic_norm_bound(const AutomaticSequence& seq, std::uint64_t n,
                             int s, const EnumLimits& limits) {
  const bool is_tm = seq.id() == "tm";
  if (!is_tm && seq.id() != "rs")
    throw std::invalid_argument("dyadic method supports tm and rs only");
  auto dec = dyadic_decompose(n, is_tm ? DecomposeStyle::tm : DecomposeStyle::rs);
  const BigInt cc_n = cube_count(n, s);
  std::map<int, double> block_norm;
  double bound = 0.0;
  for (const auto& iv : dec.intervals) {
    auto it = block_norm.find(iv.level);
    if (it == block_norm.end()) {
      auto rep = gowers_norm(Signal::of_sequence(seq, 1ull << iv.level), s,
                             NormMethod::nested, limits);
      it = block_norm.emplace(iv.level, rep.norm).first;
    }
    double weight = std::pow(
        BigRat(cube_count(1ull << iv.level, s), cc_n).convert_to<double>(),
        1.0 / std::ldexp(1.0, s));
    bound += weight * it->second;
  }
  if (!dec.remainder.empty()) {
    // pointwise triangle inequality: each point contributes cc(n)^{-1/2^s}
    bound += static_cast<double>(dec.remainder.size()) *
             std::pow(BigRat(1, cc_n).convert_to<double>(), 1.0 / std::ldexp(1.0, s));
  }
  NormReport rep;
  rep.seq = seq.id();
  rep.s = s;
  rep.n = n;
  rep.norm = bound;
  double power = std::pow(bound, std::ldexp(1.0, s));
  rep.power.numerator = BigInt(std::llround(std::ldexp(power, 52)));
  rep.power.denominator = BigInt(1) << 52;
  rep.method = NormMethod::dyadic;
  return rep;
}

}  // namespace

NormReport gowers_norm(const AutomaticSequence& seq, std::uint64_t n, int s,
                       NormMethod method, const EnumLimits& limits) {
  validate_order(s);
  if (n == 0) throw std::invalid_argument("need n >= 1");
  if (method == NormMethod::dyadic) return dyadic_norm_bound(seq, n, s, limits);
  NormReport rep = gowers_norm(Signal::of_sequence(seq, n), s, method, limits);
  rep.seq = seq.id();
  return rep;
}

CubeSpec CubeSpec::zero(int s, int level) {
  CubeSpec spec;
  spec.s = s;
  spec.level = level;
  spec.offsets.assign(1u << s, 0);
  spec.labels.assign(1u << s, 0);
  return spec;
}

ExactAverage cube_average(const AutomaticSequence& seq, const CubeSpec& spec,
                          NormMethod method, const EnumLimits& limits) {
  validate_order(spec.s);
  if (spec.level < 0 || spec.level > 62)
    throw std::invalid_argument("level out of range");
  const std::size_t corners = 1u << spec.s;
  if (spec.offsets.size() != corners || spec.labels.size() != corners)
    throw std::invalid_argument("spec arrays must have 2^s entries");
  if (method == NormMethod::dyadic)
    throw std::invalid_argument("cube_average supports brute and nested only");
  int max_off = 0;
  for (int r : spec.offsets) {
    if (r < 0) throw std::invalid_argument("negative offsets rejected");
    max_off = std::max(max_off, r);
  }
  for (int a : spec.labels)
    if (a < 0 || a >= seq.kernel_size())
      throw std::invalid_argument("label is not a kernel element");

  const std::uint64_t n = 1ull << spec.level;
  std::map<int, Array> blocks;
  std::vector<Array> gs;
  gs.reserve(corners);
  for (std::size_t w = 0; w < corners; ++w) {
    int elem = spec.labels[w];
    auto it = blocks.find(elem);
    if (it == blocks.end())
      it = blocks.emplace(elem, seq.element_block(elem, n + static_cast<std::uint64_t>(max_off))).first;
    const Array& blk = it->second;
    Array g(blk.begin() + spec.offsets[w],
            blk.begin() + spec.offsets[w] + static_cast<std::ptrdiff_t>(n));
    gs.push_back(std::move(g));
  }
  long long num = run_sum(gs, spec.s, method, limits);
  return ExactAverage{BigInt(num), cube_count(n, spec.s)};
}

BigRat vertex_average(const AutomaticSequence& seq, int s, int level,
                      const WalkVertex& v, const EnumLimits& limits) {
  CubeSpec spec;
  spec.s = s;
  spec.level = level;
  spec.offsets.assign(v.offsets.begin(), v.offsets.end());
  spec.labels.assign(v.labels.begin(), v.labels.end());
  ExactAverage a = cube_average(seq, spec, NormMethod::nested, limits);
  BigRat out(a.numerator, a.denominator);
  return v.sign < 0 ? -out : out;
}

double recursion_residual(const AutomaticSequence& seq, const CubeSpec& spec,
                          int level, const EnumLimits& limits) {
  validate_order(spec.s);
  if (level < 1) throw std::invalid_argument("need level >= 1");
  WalkVertex v;
  v.labels.assign(spec.labels.begin(), spec.labels.end());
  v.offsets.reserve(spec.offsets.size());
  for (int r : spec.offsets) {
    if (r < 0 || r > 255) throw std::invalid_argument("offset out of range");
    v.offsets.push_back(static_cast<std::uint8_t>(r));
  }
  v.sign = 1;
  BigRat lhs = vertex_average(seq, spec.s, level, v, limits);
  BigRat rhs = 0;
  const int choices = 1 << (spec.s + 1);
  std::vector<int> e(static_cast<std::size_t>(spec.s) + 1);
  for (int choice = 0; choice < choices; ++choice) {
    for (int b = 0; b <= spec.s; ++b)
      e[static_cast<std::size_t>(b)] = (choice >> b) & 1;
    WalkVertex w = vertex_step(seq, v, e, 1);
    rhs += vertex_average(seq, spec.s, level - 1, w, limits);
  }
  rhs /= choices;
  BigRat diff = lhs - rhs;
  if (diff < 0) diff = -diff;
  return diff.convert_to<double>();
}

Decomposition dyadic_decompose(std::uint64_t n, DecomposeStyle style) {
  if (n == 0) throw std::invalid_argument("need n >= 1");
  std::vector<Interval> dyads;
  std::uint64_t start = 0;
  for (int level = 63; level >= 0; --level) {
    if ((n >> level) & 1) {
      std::uint64_t len = 1ull << level;
      dyads.push_back(Interval{start, start + len, level, start >> level});
      start += len;
    }
  }
  if (style == DecomposeStyle::tm) return Decomposition{std::move(dyads), {}};
  // rs style: repeatedly split off the left half of the remaining dyadic
  // block; every piece [m 2^{L+1}, m 2^{L+1} + 2^L), final singleton into J.
  Decomposition out;
  for (const auto& d : dyads) {
    std::uint64_t a = d.begin, b = d.end;
    while (b - a > 1) {
      std::uint64_t half = (b - a) >> 1;
      int level = 0;
      while ((1ull << (level + 1)) <= half) ++level;
      out.intervals.push_back(
          Interval{a, a + half, level, a >> (level + 1)});
      a += half;
    }
    out.remainder.push_back(a);
  }
  return out;
}

}  // namespace gowers
