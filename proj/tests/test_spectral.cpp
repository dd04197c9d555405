#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gowers/norms.hpp"
#include "gowers/seq.hpp"
#include "gowers/spectral.hpp"
#include "gowers/walk.hpp"

using namespace gowers;

namespace {

// Hand-built two-state chain with P(i,j) = 1/2 everywhere, wrapped as a walk
// graph so the solvers can run on a known fixture.
WalkGraph symmetric_two_state() {
  WalkGraph g{AutomaticSequence::thue_morse(), 1, {}, {}, {}};
  WalkVertex a, b;
  a.labels = {0, 0};
  a.offsets = {0, 0};
  a.sign = 1;
  b = a.flipped();
  g.vertices = {a, b};
  g.index.emplace(a, 0);
  g.index.emplace(b, 1);
  g.edges = {{{0, 2}, {1, 2}}, {{0, 2}, {1, 2}}};
  return g;
}

}  // namespace

TEST_CASE("matrix powers are exact") {
  auto g = build_graph(AutomaticSequence::thue_morse(), 2);
  auto p = transition_matrix(g);
  auto p0 = matrix_power(p, 0);
  for (int i = 0; i < p.size; ++i)
    for (int j = 0; j < p.size; ++j)
      REQUIRE(p0.at(i, j) == (i == j ? 1 : 0));
  auto p1 = matrix_power(p, 1);
  REQUIRE(p1.num == p.num);
  auto cur = p;
  for (int l = 2; l <= 20; ++l) {
    cur = multiply(cur, p);
    REQUIRE(cur.log2_den == l * (g.s + 1));
    REQUIRE(cur.row_stochastic());
  }
}

TEST_CASE("stationary distribution of the two-state fixture is uniform") {
  auto g = symmetric_two_state();
  auto st = stationary(g);
  REQUIRE(st.exact);
  CHECK(st.exact_probs[0] == BigRat(1, 2));
  CHECK(st.exact_probs[1] == BigRat(1, 2));
  CHECK(st.residual == 0.0);
}

TEST_CASE("stationary distribution is flip-invariant") {
  for (auto id : {"tm", "rs"}) {
    auto g = build_graph(AutomaticSequence::from_id(id), 2);
    auto st = stationary(g);
    REQUIRE(st.exact);
    CHECK(st.residual == 0.0);
    auto rmap = g.sign_flip_map();
    BigRat total = 0;
    for (std::size_t i = 0; i < g.vertices.size(); ++i) {
      REQUIRE(st.exact_probs[i] >= 0);
      total += st.exact_probs[i];
      REQUIRE(st.exact_probs[i] ==
              st.exact_probs[static_cast<std::size_t>(rmap[i])]);
    }
    REQUIRE(total == 1);
  }
}

TEST_CASE("iterative stationary solve matches the exact one") {
  auto g = build_graph(AutomaticSequence::rudin_shapiro(), 2);
  auto exact = stationary(g);
  auto iterated = stationary(g, /*exact_size_limit=*/0);
  REQUIRE(!iterated.exact);
  REQUIRE(iterated.residual <= 1e-12);
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    REQUIRE(iterated.probs[i] == doctest::Approx(exact.probs[i]).epsilon(1e-10));
}

TEST_CASE("stationary requires ergodicity") {
  // a two-vertex period-two chain: 0 -> 1 -> 0
  WalkGraph g = symmetric_two_state();
  g.edges = {{{1, 4}}, {{0, 4}}};
  CHECK_THROWS_AS(stationary(g), std::runtime_error);
}

TEST_CASE("signed discrepancy starts at one and decays monotonically") {
  for (auto id : {"tm", "rs"}) {
    auto g = build_graph(AutomaticSequence::from_id(id), 2);
    CHECK(signed_discrepancy(g, 0) == 1.0);
    auto ds = signed_discrepancies(g, 30);
    for (std::size_t i = 0; i + 1 < ds.size(); ++i)
      REQUIRE(ds[i + 1] <= ds[i] * 1.01);
  }
}

TEST_CASE("frozen discrepancy prefix for tm") {
  auto g = build_graph(AutomaticSequence::thue_morse(), 2);
  auto ds = signed_discrepancies(g, 4);
  CHECK(ds[0] == 0.5);
  CHECK(ds[1] == 0.25);
  CHECK(ds[2] == 0.140625);
  CHECK(ds[3] == 0.078125);
}

TEST_CASE("spectral gap fixtures and fit consistency") {
  auto g = build_graph(AutomaticSequence::thue_morse(), 2);
  auto est = spectral_gap(g);
  CHECK(est.num_vertices == 12);
  // second eigenvalue is (1 + sqrt 17)/8
  CHECK(est.lambda2 ==
        doctest::Approx((1.0 + std::sqrt(17.0)) / 8.0).epsilon(1e-12));
  CHECK(est.c ==
        doctest::Approx(-std::log2((1.0 + std::sqrt(17.0)) / 8.0)).epsilon(1e-12));
  CHECK(est.c_prime == doctest::Approx(est.c / 4).epsilon(1e-12));
  CHECK(std::abs(est.fit_c - est.c) / est.c <= 0.25);
  CHECK(est.samples.size() == 30);

  auto grs = build_graph(AutomaticSequence::rudin_shapiro(), 2);
  auto est_rs = spectral_gap(grs);
  CHECK(est_rs.lambda2 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(est_rs.fit_c - est_rs.c) / est_rs.c <= 0.25);
}

TEST_CASE("top eigenvalue is simple") {
  for (auto id : {"tm", "rs"}) {
    auto g = build_graph(AutomaticSequence::from_id(id), 2);
    auto mods = eigenvalue_moduli(transition_matrix(g));
    REQUIRE(mods[0] == doctest::Approx(1.0).epsilon(1e-10));
    int near_one = 0;
    for (double m : mods)
      if (std::abs(m - 1.0) < 1e-8) ++near_one;
    REQUIRE(near_one == 1);
    REQUIRE(mods[1] < 1.0);
  }
  CHECK_THROWS_AS(
      eigenvalue_moduli(transition_matrix(
                            build_graph(AutomaticSequence::thue_morse(), 2)),
                        /*size_limit=*/4),
      std::invalid_argument);
}

TEST_CASE("rows converge to the stationary distribution at the gap rate") {
  const double kConvergenceConstant = 1.0;
  auto g = build_graph(AutomaticSequence::thue_morse(), 2);
  auto st = stationary(g);
  auto est = spectral_gap(g, 5);
  auto p = transition_matrix(g);
  auto pl = matrix_power(p, 5);
  for (int l = 5; l <= 30; ++l) {
    double dist = 0;
    for (int i = 0; i < p.size; ++i)
      for (int j = 0; j < p.size; ++j)
        dist = std::max(dist,
                        std::abs(pl.value(i, j) - st.probs[static_cast<std::size_t>(j)]));
    REQUIRE(dist <= kConvergenceConstant * std::pow(est.lambda2, l));
    pl = multiply(pl, p);
  }
}

TEST_CASE("signed discrepancy is controlled by the convergence distance") {
  auto g = build_graph(AutomaticSequence::rudin_shapiro(), 2);
  auto st = stationary(g);
  auto p = transition_matrix(g);
  auto ds = signed_discrepancies(g, 12);
  auto pl = matrix_power(p, 1);
  for (int l = 1; l <= 12; ++l) {
    double dist = 0;
    for (int j = 0; j < p.size; ++j)
      dist = std::max(dist, std::abs(pl.value(0, j) -
                                     st.probs[static_cast<std::size_t>(j)]));
    REQUIRE(ds[static_cast<std::size_t>(l) - 1] <= 2 * dist + 1e-15);
    pl = multiply(pl, p);
  }
}

TEST_CASE("norm upper bound dominates the exact powers and decays") {
  const EnumLimits kSerial{kDefaultWorkBudget, 1};
  auto tm = AutomaticSequence::thue_morse();
  auto g = build_graph(tm, 2);
  for (int level = 4; level <= 10; ++level) {
    auto avg = cube_average(tm, CubeSpec::zero(2, level), NormMethod::nested,
                            kSerial);
    REQUIRE(avg.value() <= norm_upper_bound(g, level));
  }
  double prev = norm_upper_bound(g, 4);
  for (int level = 5; level <= 40; ++level) {
    double b = norm_upper_bound(g, level);
    REQUIRE(b < prev);
    prev = b;
  }
  // log-linear rate: the ratio to its own fitted rate stays in a narrow band
  double lo = 1e9, hi = 0;
  double slope =
      (std::log2(norm_upper_bound(g, 10)) - std::log2(norm_upper_bound(g, 40))) /
      30.0;
  CHECK(slope > 0.2);
  CHECK(slope < 0.5);
  for (int level = 10; level <= 40; ++level) {
    double r = norm_upper_bound(g, level) * std::pow(2.0, slope * level);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  CHECK(hi / lo <= 4.0);
}
