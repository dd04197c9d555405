#include "gowers/apps.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gowers {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate_n(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("need n >= 1");
}

}  // namespace

APCountReport ap_count(const AutomaticSequence& seq, std::uint64_t n, int k,
                       const EnumLimits& limits) {
  validate_n(n);
  if (k < 3) throw std::invalid_argument("need k >= 3");
  // ~ n^2 / (k-1) membership tests
  if (BigInt(n) * n / (k - 1) > BigInt(limits.work_budget))
    throw BudgetExceeded("ap_count work exceeds budget");
  APCountReport rep;
  rep.seq = seq.id();
  rep.n = n;
  rep.k = k;
  auto blk = seq.block(n);
  std::vector<char> plus(n);
  for (std::uint64_t i = 0; i < n; ++i) plus[i] = blk[i] > 0;
  long long count = 0, total = 0;
  const std::uint64_t dmax = n >= 1 ? (n - 1) / static_cast<std::uint64_t>(k - 1) : 0;
  for (std::uint64_t d = 1; d <= dmax; ++d) {
    const std::uint64_t m = n - static_cast<std::uint64_t>(k - 1) * d;
    total += static_cast<long long>(m);
    for (std::uint64_t a = 0; a < m; ++a) {
      bool all = true;
      for (int i = 0; i < k && all; ++i) all = plus[a + static_cast<std::uint64_t>(i) * d];
      count += all;
    }
  }
  rep.count = count;
  rep.total = total;
  rep.expected = std::ldexp(static_cast<double>(total), -k);
  rep.deviation = static_cast<double>(count) - rep.expected;
  return rep;
}

ExpSumReport exp_sum(const AutomaticSequence& seq, std::uint64_t n,
                     std::uint64_t grid, double exponent) {
  validate_n(n);
  if (grid == 0) grid = 8 * n;
  if (grid < 4 * n) throw std::invalid_argument("grid must be >= 4n");
  if (grid > (1ull << 24)) throw std::invalid_argument("grid too large");
  const std::size_t G = grid;
  const int K = seq.kernel_size();
  using Cx = std::complex<double>;

  // lengths by depth: at most two distinct values per level
  std::vector<std::vector<std::uint64_t>> lengths{{n}};
  while (lengths.back()[0] > 1 ||
         (lengths.back().size() > 1 && lengths.back()[1] > 1)) {
    std::vector<std::uint64_t> next;
    for (auto m : lengths.back()) {
      next.push_back((m + 1) / 2);
      next.push_back(m / 2);
    }
    std::sort(next.rbegin(), next.rend());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    lengths.push_back(next);
  }

  std::vector<Cx> phase(G);
  for (std::size_t j = 0; j < G; ++j) {
    double a = static_cast<double>(j) / static_cast<double>(G);
    phase[j] = Cx(std::cos(kTwoPi * a), std::sin(kTwoPi * a));
  }
  std::vector<std::size_t> dbl(G);
  for (std::size_t j = 0; j < G; ++j) dbl[j] = (2 * j) % G;

  // per (length, element) arrays over the grid, bottom depth upward:
  // S_m(alpha) = sign(q,0) S_{ceil(m/2)}(2 alpha) + e(alpha) sign(q,1) S_{floor(m/2)}(2 alpha)
  auto key = [&](std::uint64_t m, int e) { return m * static_cast<std::uint64_t>(K) + static_cast<std::uint64_t>(e); };
  std::vector<std::vector<Cx>> cur, prev;
  std::vector<std::uint64_t> cur_keys, prev_keys;
  for (std::size_t depth = lengths.size(); depth-- > 0;) {
    cur.clear();
    cur_keys.clear();
    for (auto m : lengths[depth]) {
      for (int e = 0; e < K; ++e) {
        std::vector<Cx> arr(G);
        if (m == 0) {
          // zeros
        } else if (m == 1) {
          std::fill(arr.begin(), arr.end(), Cx(1.0, 0.0));
        } else {
          auto find_prev = [&](std::uint64_t mm, int ee) -> const std::vector<Cx>& {
            std::uint64_t kk = key(mm, ee);
            for (std::size_t i = 0; i < prev_keys.size(); ++i)
              if (prev_keys[i] == kk) return prev[i];
            throw std::logic_error("missing child sum");
          };
          KernelStep s0 = seq.lsb_step(e, 0);
          KernelStep s1 = seq.lsb_step(e, 1);
          const auto& even = find_prev((m + 1) / 2, s0.next);
          const auto& odd = find_prev(m / 2, s1.next);
          const double g0 = s0.sign, g1 = s1.sign;
          for (std::size_t j = 0; j < G; ++j)
            arr[j] = g0 * even[dbl[j]] + phase[j] * (g1 * odd[dbl[j]]);
        }
        cur_keys.push_back(key(m, e));
        cur.push_back(std::move(arr));
      }
    }
    prev = std::move(cur);
    prev_keys = std::move(cur_keys);
    cur = {};
    cur_keys = {};
  }
  const std::vector<Cx>* top = nullptr;
  for (std::size_t i = 0; i < prev_keys.size(); ++i)
    if (prev_keys[i] == key(n, 0)) top = &prev[i];
  if (!top) throw std::logic_error("missing top-level sum");

  ExpSumReport rep;
  rep.seq = seq.id();
  rep.n = n;
  rep.grid = grid;
  double best = -1.0;
  std::size_t best_j = 0;
  for (std::size_t j = 0; j < G; ++j) {
    double v = std::abs((*top)[j]);
    if (v > best) {
      best = v;
      best_j = j;
    }
  }
  rep.sup = best;
  rep.sup_alpha = static_cast<double>(best_j) / static_cast<double>(G);
  if (exponent == 0.0) {
    if (seq.id() == "tm")
      exponent = std::log(3.0) / std::log(4.0);
    else if (seq.id() == "rs")
      exponent = 0.5;
    else
      exponent = 1.0;
  }
  rep.exponent = exponent;
  rep.normalized = rep.sup / std::pow(static_cast<double>(n), exponent);
  return rep;
}

std::complex<double> twisted_sum(const AutomaticSequence& seq, std::uint64_t n,
                                 double alpha) {
  validate_n(n);
  auto blk = seq.block(n);
  std::complex<double> total = 0.0;
  for (std::uint64_t m = 0; m < n; ++m) {
    double x = alpha * static_cast<double>(m);
    x -= std::floor(x);
    total += static_cast<double>(blk[m]) *
             std::complex<double>(std::cos(kTwoPi * x), std::sin(kTwoPi * x));
  }
  return total;
}

long long progression_sum(const AutomaticSequence& seq, std::uint64_t step,
                          std::uint64_t offset, std::uint64_t count) {
  if (step < 1) throw std::invalid_argument("need step >= 1");
  long long total = 0;
  const std::uint64_t top = count == 0 ? 0 : step * (count - 1) + offset + 1;
  if (count > 0 && top <= (1ull << 26)) {
    auto blk = seq.block(top);
    for (std::uint64_t m = 0; m < count; ++m) total += blk[step * m + offset];
  } else {
    for (std::uint64_t m = 0; m < count; ++m)
      total += seq.eval(step * m + offset);
  }
  return total;
}

SelfCorrelation self_correlation_scan(const AutomaticSequence& seq,
                                      std::uint64_t n, std::uint64_t h_max) {
  validate_n(n);
  if (h_max < 1) throw std::invalid_argument("need h_max >= 1");
  auto blk = seq.block(n);
  SelfCorrelation best;
  for (std::uint64_t h = 1; h <= h_max && h < n; ++h) {
    long long run = 0;
    long long best_val = 0;
    std::uint64_t best_m = 0;
    for (std::uint64_t i = 0; i + h < n; ++i) {
      run += blk[i] * blk[i + h];
      if (std::llabs(run) > std::llabs(best_val)) {
        best_val = run;
        best_m = i + 1;
      }
    }
    if (std::llabs(best_val) > std::llabs(best.value)) {
      best = SelfCorrelation{best_m, h, best_val};
    }
  }
  return best;
}

double poly_phase_corr(const AutomaticSequence& seq, std::uint64_t n,
                       const std::vector<double>& coeffs) {
  validate_n(n);
  if (coeffs.empty()) throw std::invalid_argument("empty polynomial");
  auto blk = seq.block(n);
  std::complex<double> total = 0.0;
  for (std::uint64_t m = 0; m < n; ++m) {
    double x = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;)
      x = x * static_cast<double>(m) + coeffs[i];
    x -= std::floor(x);
    total += static_cast<double>(blk[m]) *
             std::complex<double>(std::cos(kTwoPi * x), std::sin(kTwoPi * x));
  }
  return std::abs(total) / static_cast<double>(n);
}

std::vector<ConjectureRow> conjecture_scan(const std::vector<BitWord>& patterns,
                                           int s, std::uint64_t n,
                                           std::uint64_t q_max,
                                           const EnumLimits& limits) {
  validate_n(n);
  if (q_max < 1) throw std::invalid_argument("need q_max >= 1");
  std::vector<ConjectureRow> rows;
  for (const auto& word : patterns) {
    ConjectureRow row;
    row.pattern = word.str();
    try {
      auto seq = AutomaticSequence::pattern(word);
      row.kernel_size = seq.kernel_size();
      row.kernel_symmetric = seq.check_kernel_symmetry();
      // linear correlations E_{m<n} a(q m + r)
      double best = -1.0;
      for (std::uint64_t q = 1; q <= q_max; ++q) {
        for (std::uint64_t r = 0; r < q; ++r) {
          double v = std::abs(static_cast<double>(progression_sum(seq, q, r, n))) /
                     static_cast<double>(n);
          if (v > best) {
            best = v;
            row.argmax_q = q;
            row.argmax_r = r;
          }
        }
      }
      row.max_linear_corr = best;
      // norm ladder on [2^L]
      for (int level = 2; (1ull << level) <= n; ++level) {
        auto avg = cube_average(seq, CubeSpec::zero(s, level),
                                NormMethod::nested, limits);
        row.norms.emplace_back(
            level, std::pow(std::max(avg.value(), 0.0),
                            1.0 / std::ldexp(1.0, s)));
      }
      auto graph = build_graph(seq, s);
      row.graph = analyze_graph(graph);
      if (row.graph.strongly_connected && row.graph.aperiodic &&
          graph.vertices.size() <= 4000) {
        auto mods = eigenvalue_moduli(transition_matrix(graph));
        row.lambda2 = mods.size() > 1 ? mods[1] : 0.0;
        row.c = row.lambda2 > 0 ? -std::log2(row.lambda2) : 0.0;
      }
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace gowers
