#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gowers/norms.hpp"
#include "gowers/seq.hpp"
#include "gowers/walk.hpp"

using namespace gowers;

namespace {

std::vector<int> make_e(int s, std::initializer_list<int> vals) {
  std::vector<int> e(vals);
  e.resize(static_cast<std::size_t>(s) + 1, 0);
  return e;
}

}  // namespace

TEST_CASE("offset update examples") {
  // zero stays put: the loop at the origin
  CHECK(delta_offsets({0, 0, 0, 0}, {0, 0, 0}) == std::vector<int>{0, 0, 0, 0});
  // e0 = e1 = 1: the result is the indicator of w_1
  // corner mask order: index bit i-1 = w_i, so w_1 = 1 at indices 1 and 3
  CHECK(delta_offsets({0, 0, 0, 0}, {1, 1, 0}) == std::vector<int>{0, 1, 0, 1});
  // componentwise floor, checked against an independent loop
  std::vector<int> r = {0, 1, 1, 2};
  std::vector<int> e = {1, 0, 1};
  auto got = delta_offsets(r, e);
  for (int w = 0; w < 4; ++w) {
    int dot = e[0];
    for (int i = 1; i <= 2; ++i)
      if ((w >> (i - 1)) & 1) dot += e[static_cast<std::size_t>(i)];
    REQUIRE(got[static_cast<std::size_t>(w)] == (r[static_cast<std::size_t>(w)] + dot) / 2);
  }
  CHECK(got == std::vector<int>{0, 1, 1, 2});
}

TEST_CASE("vertex step fixes the initial vertex at e = 0") {
  for (auto id : {"tm", "rs", "pattern:111"}) {
    auto seq = AutomaticSequence::from_id(id);
    auto g = build_graph(seq, 2);
    for (int l : {1, 2, 5}) {
      auto w = vertex_step(seq, g.v0(), make_e(2, {0, 0, 0}), l);
      REQUIRE(w == g.v0());
    }
  }
}

TEST_CASE("multi-bit steps compose from single-bit steps") {
  std::mt19937_64 rng(42);
  for (auto id : {"tm", "rs", "pattern:111"}) {
    auto seq = AutomaticSequence::from_id(id);
    const int s = 2;
    for (int trial = 0; trial < 200; ++trial) {
      WalkVertex v;
      for (int w = 0; w < 4; ++w) {
        v.labels.push_back(static_cast<std::uint16_t>(rng() % static_cast<std::uint64_t>(seq.kernel_size())));
        v.offsets.push_back(static_cast<std::uint8_t>(rng() % 4));
      }
      v.sign = (rng() & 1) ? 1 : -1;
      std::vector<int> e(static_cast<std::size_t>(s) + 1);
      for (auto& x : e) x = static_cast<int>(rng() % 4);
      auto two_step = vertex_step(seq, v, e, 2);
      std::vector<int> lo(e.size()), hi(e.size());
      for (std::size_t i = 0; i < e.size(); ++i) {
        lo[i] = e[i] & 1;
        hi[i] = e[i] >> 1;
      }
      auto chained = vertex_step(seq, vertex_step(seq, v, lo, 1), hi, 1);
      REQUIRE(two_step == chained);
    }
  }
}

TEST_CASE("tm graph fixtures") {
  auto g = build_graph(AutomaticSequence::thue_morse(), 2);
  CHECK(g.vertices.size() == 12);
  // offsets stay within 0 <= r_w <= |w|
  for (const auto& v : g.vertices)
    for (std::size_t w = 0; w < v.offsets.size(); ++w)
      REQUIRE(v.offsets[w] <= __builtin_popcountll(w));
  auto props = analyze_graph(g);
  CHECK(props.finite);
  CHECK(props.strongly_connected);
  CHECK(props.aperiodic);
  CHECK(props.r_symmetric);
  CHECK(props.period == 1);
  CHECK(props.num_sccs == 1);
}

TEST_CASE("graph vertex counts are stable") {
  CHECK(build_graph(AutomaticSequence::thue_morse(), 1).vertices.size() == 4);
  CHECK(build_graph(AutomaticSequence::thue_morse(), 3).vertices.size() == 76);
  CHECK(build_graph(AutomaticSequence::rudin_shapiro(), 2).vertices.size() == 68);
  CHECK(build_graph(AutomaticSequence::from_id("pattern:111"), 2).vertices.size() == 216);
}

TEST_CASE("rs graph contains the initial vertex and its flip") {
  auto g = build_graph(AutomaticSequence::rudin_shapiro(), 2);
  CHECK(g.find(g.v0()).has_value());
  CHECK(g.find(g.v0().flipped()).has_value());
  auto props = analyze_graph(g);
  CHECK(props.strongly_connected);
  CHECK(props.aperiodic);
  CHECK(props.r_symmetric);
}

TEST_CASE("vertex cap raises") {
  CHECK_THROWS_AS(build_graph(AutomaticSequence::thue_morse(), 3, 10),
                  CapExceeded);
}

TEST_CASE("analyzer properties across orders") {
  for (int s : {2, 3, 4}) {
    auto props = analyze_graph(build_graph(AutomaticSequence::thue_morse(), s));
    REQUIRE(props.strongly_connected);
    REQUIRE(props.aperiodic);
    REQUIRE(props.r_symmetric);
  }
  auto props = analyze_graph(build_graph(AutomaticSequence::rudin_shapiro(), 3));
  CHECK(props.num_vertices == 972);
  CHECK(props.strongly_connected);
  CHECK(props.aperiodic);
  CHECK(props.r_symmetric);
}

TEST_CASE("boolean-power primitivity agrees with the analyzer") {
  for (auto id : {"tm", "rs", "pattern:111"}) {
    auto g = build_graph(AutomaticSequence::from_id(id), 2);
    auto props = analyze_graph(g);
    REQUIRE(reachability_primitive(g) ==
            (props.strongly_connected && props.aperiodic));
  }
}

TEST_CASE("witness paths verify") {
  for (int s : {2, 3, 5}) {
    auto w = witness_path(AutomaticSequence::thue_morse(), s);
    REQUIRE(w.valid);
    REQUIRE(w.steps.size() == static_cast<std::size_t>(s) + 1);
    // terminal vertex is the flipped origin
    auto g = build_graph(AutomaticSequence::thue_morse(), s);
    REQUIRE(w.steps.back().to == g.v0().flipped());
  }
  for (int s : {2, 3}) {
    auto w = witness_path(AutomaticSequence::rudin_shapiro(), s);
    REQUIRE(w.valid);
    REQUIRE(w.steps.size() == 1);
    REQUIRE(w.steps[0].l == s + 2);
  }
  CHECK_THROWS_AS(witness_path(AutomaticSequence::thue_morse(), 1),
                  std::invalid_argument);
}

TEST_CASE("transition matrix fixtures") {
  auto g = build_graph(AutomaticSequence::thue_morse(), 2);
  auto p = transition_matrix(g);
  REQUIRE(p.size == 12);
  REQUIRE(p.log2_den == 3);
  REQUIRE(p.row_stochastic());
  // exactly 4 of 8 choices keep the origin fixed
  CHECK(p.at(0, 0) == 4);
  // independent count over e
  auto seq = AutomaticSequence::thue_morse();
  int count = 0;
  for (int choice = 0; choice < 8; ++choice) {
    std::vector<int> e = {choice & 1, (choice >> 1) & 1, (choice >> 2) & 1};
    if (vertex_step(seq, g.v0(), e, 1) == g.v0()) ++count;
  }
  CHECK(count == 4);
}

TEST_CASE("transition probabilities respect the sign flip") {
  for (auto id : {"tm", "rs"}) {
    auto g = build_graph(AutomaticSequence::from_id(id), 2);
    auto p = transition_matrix(g);
    auto rmap = g.sign_flip_map();
    for (int i = 0; i < p.size; ++i) {
      REQUIRE(rmap[static_cast<std::size_t>(i)] >= 0);
      for (int j = 0; j < p.size; ++j)
        REQUIRE(p.at(i, j) == p.at(rmap[static_cast<std::size_t>(i)],
                                   rmap[static_cast<std::size_t>(j)]));
    }
  }
}

TEST_CASE("two-step transition counts equal the squared matrix") {
  for (auto id : {"tm", "rs"}) {
    auto seq = AutomaticSequence::from_id(id);
    const int s = 2;
    auto g = build_graph(seq, s);
    auto p = transition_matrix(g);
    auto p2 = multiply(p, p);
    REQUIRE(p2.log2_den == 2 * (s + 1));
    REQUIRE(p2.row_stochastic());
    // direct 2-step enumeration over e in [0,4)^{s+1}
    for (int i = 0; i < p2.size && i < 8; ++i) {
      std::vector<BigInt> row(static_cast<std::size_t>(p2.size), 0);
      std::vector<int> e(static_cast<std::size_t>(s) + 1);
      for (int choice = 0; choice < 64; ++choice) {
        int c = choice;
        for (int b = 0; b <= s; ++b) {
          e[static_cast<std::size_t>(b)] = c & 3;
          c >>= 2;
        }
        auto w = vertex_step(seq, g.vertices[static_cast<std::size_t>(i)], e, 2);
        auto j = g.find(w);
        REQUIRE(j.has_value());
        row[static_cast<std::size_t>(*j)] += 1;
      }
      for (int j = 0; j < p2.size; ++j)
        REQUIRE(row[static_cast<std::size_t>(j)] == p2.at(i, j));
    }
  }
}

TEST_CASE("zero-choice paths drain to the origin pair") {
  for (auto id : {"tm", "rs", "pattern:111"}) {
    auto seq = AutomaticSequence::from_id(id);
    auto g = build_graph(seq, 2);
    auto v0 = g.v0();
    auto r0 = v0.flipped();
    for (const auto& v : g.vertices) {
      WalkVertex cur = v;
      bool reached = false;
      for (int step = 0; step < 64; ++step) {
        if ((cur.labels == v0.labels && cur.offsets == v0.offsets)) {
          reached = true;
          break;
        }
        cur = vertex_step(seq, cur, {0, 0, 0}, 1);
      }
      REQUIRE(reached);
      REQUIRE((cur == v0 || cur == r0));
    }
  }
}

TEST_CASE("one-step averages satisfy the transition identity") {
  // |A(L,v) - sum_v' P(v,v') A(L-1,v')| <= C 2^-L over every vertex
  const double kConstant = 2.0;
  const EnumLimits kSerial{kDefaultWorkBudget, 1};
  for (auto id : {"tm", "rs"}) {
    auto seq = AutomaticSequence::from_id(id);
    const int s = 2;
    auto g = build_graph(seq, s);
    auto p = transition_matrix(g);
    for (int level : {4, 6, 8}) {
      for (std::size_t i = 0; i < g.vertices.size(); ++i) {
        BigRat lhs = vertex_average(seq, s, level, g.vertices[i], kSerial);
        BigRat rhs = 0;
        for (const auto& edge : g.edges[i])
          rhs += BigRat(edge.multiplicity, 1 << (s + 1)) *
                 vertex_average(seq, s, level - 1,
                                g.vertices[static_cast<std::size_t>(edge.to)],
                                kSerial);
        BigRat diff = lhs - rhs;
        if (diff < 0) diff = -diff;
        REQUIRE(diff.convert_to<double>() <=
                kConstant * std::ldexp(1.0, -level));
      }
    }
  }
}

TEST_CASE("dot export lists all vertices and edges") {
  auto g = build_graph(AutomaticSequence::thue_morse(), 2);
  auto dot = to_dot(g);
  CHECK(dot.find("digraph walk") != std::string::npos);
  CHECK(dot.find("v11") != std::string::npos);
  CHECK(dot.find("/8") != std::string::npos);
}
