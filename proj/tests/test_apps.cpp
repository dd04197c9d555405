#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "gowers/apps.hpp"
#include "gowers/norms.hpp"
#include "gowers/seq.hpp"

using namespace gowers;

namespace {

const EnumLimits kSerial{kDefaultWorkBudget, 1};

// independent progression counter: every k-tuple checked pointwise
long long count_aps_directly(const AutomaticSequence& seq, std::uint64_t n,
                             int k) {
  long long count = 0;
  for (std::uint64_t a = 0; a < n; ++a) {
    for (std::uint64_t d = 1; a + static_cast<std::uint64_t>(k - 1) * d < n; ++d) {
      bool all = true;
      for (int i = 0; i < k && all; ++i)
        all = seq.eval(a + static_cast<std::uint64_t>(i) * d) == 1;
      count += all;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("ap_count examples") {
  auto tm = AutomaticSequence::thue_morse();
  auto rep = ap_count(tm, 4, 3);
  CHECK(rep.count == 0);  // t = (+,-,-,+): no monochromatic +1 triple
  CHECK(rep.total == 2);
  CHECK(rep.expected == doctest::Approx(0.25));
  rep = ap_count(tm, 2, 3);  // no room for d >= 1
  CHECK(rep.count == 0);
  CHECK(rep.total == 0);
  CHECK_THROWS_AS(ap_count(tm, 16, 2), std::invalid_argument);
  EnumLimits tiny{100, 1};
  CHECK_THROWS_AS(ap_count(tm, 1 << 16, 3, tiny), BudgetExceeded);
}

TEST_CASE("ap_count equals the direct enumeration") {
  for (auto id : {"tm", "rs"}) {
    auto seq = AutomaticSequence::from_id(id);
    for (std::uint64_t n : {17ull, 100ull, 257ull, 512ull}) {
      for (int k : {3, 4}) {
        REQUIRE(ap_count(seq, n, k).count == count_aps_directly(seq, n, k));
      }
    }
  }
}

TEST_CASE("frozen ap counts for tm") {
  auto tm = AutomaticSequence::thue_morse();
  auto rep = ap_count(tm, 1 << 8, 3);
  CHECK(rep.count == 2144);
  CHECK(rep.total == 16256);
  rep = ap_count(tm, 1 << 10, 4);
  CHECK(rep.count == 12669);
  CHECK(rep.total == 174251);
}

TEST_CASE("exp_sum equals the direct grid maximum") {
  for (auto id : {"tm", "rs", "pattern:111"}) {
    auto seq = AutomaticSequence::from_id(id);
    for (std::uint64_t n : {1ull, 7ull, 64ull, 100ull}) {
      std::uint64_t grid = 4 * n + 4;
      auto rep = exp_sum(seq, n, grid);
      double direct = 0;
      for (std::uint64_t j = 0; j < grid; ++j) {
        double alpha = static_cast<double>(j) / static_cast<double>(grid);
        direct = std::max(direct, std::abs(twisted_sum(seq, n, alpha)));
      }
      REQUIRE(rep.sup == doctest::Approx(direct).epsilon(1e-9));
    }
  }
}

TEST_CASE("twisted sum at zero is the plain partial sum") {
  auto tm = AutomaticSequence::thue_morse();
  CHECK(std::abs(twisted_sum(tm, 4, 0.0)) == doctest::Approx(0.0));
  long long direct = progression_sum(tm, 1, 0, 1000);
  CHECK(std::abs(twisted_sum(tm, 1000, 0.0)) ==
        doctest::Approx(std::abs(static_cast<double>(direct))).epsilon(1e-12));
}

TEST_CASE("exp_sum report fields") {
  auto tm = AutomaticSequence::thue_morse();
  auto rep = exp_sum(tm, 1);
  CHECK(rep.sup == doctest::Approx(1.0));  // single term
  CHECK(rep.grid == 8);
  rep = exp_sum(tm, 256);
  CHECK(rep.exponent == doctest::Approx(std::log(3.0) / std::log(4.0)));
  CHECK(rep.normalized <= 3.0);
  CHECK_THROWS_AS(exp_sum(tm, 256, 512), std::invalid_argument);  // grid < 4n
  auto rs_rep = exp_sum(AutomaticSequence::rudin_shapiro(), 256);
  CHECK(rs_rep.exponent == doctest::Approx(0.5));
}

TEST_CASE("progression sums") {
  auto tm = AutomaticSequence::thue_morse();
  CHECK(progression_sum(tm, 1, 0, 4) == 0);
  CHECK(progression_sum(tm, 1, 0, 1) == 1);
  // sums along progressions stay far below the trivial bound
  std::mt19937_64 rng(2718);
  const double kSweepConstant = 2.0;
  const double kExponent = std::log(3.0) / std::log(4.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint64_t n = 1ull << (6 + rng() % 9);
    std::uint64_t a = 1 + rng() % 40;
    std::uint64_t b = rng() % 40;
    if (a + b >= n) continue;
    std::uint64_t m = 1 + (n - 1 - b) / a;
    long long v = progression_sum(tm, a, b, m);
    REQUIRE(std::abs(static_cast<double>(v)) <=
            kSweepConstant * std::pow(static_cast<double>(n), kExponent));
  }
}

TEST_CASE("self correlation scan equals naive recomputation") {
  auto rs = AutomaticSequence::rudin_shapiro();
  const std::uint64_t n = 1 << 10;
  const std::uint64_t h_max = 4;
  auto best = self_correlation_scan(rs, n, h_max);
  long long naive_best = 0;
  std::uint64_t naive_m = 0, naive_h = 0;
  for (std::uint64_t h = 1; h <= h_max; ++h) {
    for (std::uint64_t m = 1; m + h <= n; ++m) {
      long long total = 0;
      for (std::uint64_t i = 0; i < m; ++i)
        total += rs.eval(i) * rs.eval(i + h);
      if (std::llabs(total) > std::llabs(naive_best)) {
        naive_best = total;
        naive_m = m;
        naive_h = h;
      }
    }
  }
  CHECK(best.value == naive_best);
  CHECK(best.h == naive_h);
  CHECK(best.m == naive_m);
}

TEST_CASE("self correlation magnitudes at n = 2^12") {
  const std::uint64_t n = 1 << 12;
  auto tm_best = self_correlation_scan(AutomaticSequence::thue_morse(), n, 1);
  CHECK(tm_best.h == 1);
  CHECK(tm_best.value == -1365);
  CHECK(tm_best.m == 4093);
  CHECK(std::llabs(tm_best.value) * 12 >= static_cast<long long>(n));

  // with shifts up to n/2 the scan reaches the structural witness h = 2^k
  auto rs_best =
      self_correlation_scan(AutomaticSequence::rudin_shapiro(), n, n / 2);
  CHECK(std::llabs(rs_best.value) * 6 >= static_cast<long long>(n));
  CHECK(rs_best.h == 2048);
  CHECK(rs_best.m == 1024);
  CHECK(rs_best.value == 1024);

  // small shifts alone do not reach the bound: largest value over h <= 8
  auto rs_small =
      self_correlation_scan(AutomaticSequence::rudin_shapiro(), n, 8);
  CHECK(std::llabs(rs_small.value) == 23);
}

TEST_CASE("polynomial phase correlations") {
  auto tm = AutomaticSequence::thue_morse();
  // constant phase reduces to the plain mean
  double v = poly_phase_corr(tm, 4, {0.0});
  CHECK(v == doctest::Approx(0.0));
  v = poly_phase_corr(tm, 5, {0.25});
  long long partial = progression_sum(tm, 1, 0, 5);
  CHECK(v == doctest::Approx(std::abs(static_cast<double>(partial)) / 5.0));
  // quadratic phase with irrational leading coefficient stays small
  v = poly_phase_corr(tm, 1 << 10, {0.0, 0.0, std::sqrt(2.0) / 4.0});
  CHECK(v < 0.05);
}

TEST_CASE("quadratic phases are bounded by the third norm") {
  const double kRatioConstant = 1.0;
  auto tm = AutomaticSequence::thue_morse();
  const std::uint64_t n = 256;
  auto rep = gowers_norm(tm, n, 3, NormMethod::nested, kSerial);
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    double v = poly_phase_corr(tm, n, {unif(rng), unif(rng), unif(rng)});
    REQUIRE(v <= kRatioConstant * rep.norm);
  }
}

TEST_CASE("conjecture scan produces the evidence table") {
  auto words = std::vector<BitWord>{*BitWord::parse("1"), *BitWord::parse("11"),
                                    *BitWord::parse("111")};
  auto rows = conjecture_scan(words, 2, 1 << 8, 4, kSerial);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].kernel_size == 1);
  CHECK(rows[1].kernel_size == 2);
  CHECK(rows[2].kernel_size == 3);
  for (const auto& row : rows) {
    REQUIRE(row.ok);
    CHECK(row.kernel_symmetric);
    CHECK(row.graph.strongly_connected);
    CHECK(row.graph.aperiodic);
    CHECK(row.graph.r_symmetric);
    // decay of E a(qn+r) is slow (for tm, q=3 behaves like N^{log3/log4 - 1})
    CHECK(row.max_linear_corr < 0.75);
    REQUIRE(row.norms.size() >= 4);
    // norms decay along the ladder
    CHECK(row.norms.back().second < row.norms.front().second);
    CHECK(row.lambda2 > 0.0);
    CHECK(row.lambda2 < 1.0);
  }
  CHECK(rows[0].graph.num_vertices == 12);
  CHECK(rows[1].graph.num_vertices == 68);
  CHECK(rows[2].graph.num_vertices == 216);
}

TEST_CASE("conjecture scan reports per-pattern failures inline") {
  auto words = std::vector<BitWord>{*BitWord::parse("1"), *BitWord::parse("11")};
  EnumLimits tiny{64, 1};
  auto rows = conjecture_scan(words, 2, 1 << 10, 2, tiny);
  REQUIRE(rows.size() == 2);
  for (const auto& row : rows) {
    CHECK_FALSE(row.ok);
    CHECK_FALSE(row.error.empty());
  }
}
