#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gowers/common.hpp"
#include "gowers/seq.hpp"

namespace gowers {

// Vertex of the signed random walk: one kernel element and one offset per
// cube corner omega in {0,1}^s, plus a global sign.  Corners are indexed by
// the mask W with bit i-1 = omega_i.  Kernel-element signs are folded into
// the vertex sign at every step, so equality is structural.
struct WalkVertex {
  std::vector<std::uint16_t> labels;
  std::vector<std::uint8_t> offsets;
  std::int8_t sign = 1;

  bool operator==(const WalkVertex&) const = default;
  WalkVertex flipped() const {
    WalkVertex v = *this;
    v.sign = static_cast<std::int8_t>(-v.sign);
    return v;
  }
};

struct WalkVertexHash {
  std::size_t operator()(const WalkVertex& v) const;
};

// Offset update for one step: r'_w = floor((r_w + e_0 + sum_{i in w} e_i)/2),
// e in {0,1}^{s+1}.
std::vector<int> delta_offsets(const std::vector<int>& offsets,
                               const std::vector<int>& e);

// l-step offset update: floor((r_w + (1,w).e)/2^l), e in [0,2^l)^{s+1}.
std::vector<int> delta_offsets_l(const std::vector<int>& offsets,
                                 const std::vector<int>& e, int l);

// Full l-step vertex map: offsets as above; labels rewritten by peeling the l
// low bits of r_w + (1,w).e through the kernel, signs accumulated into the
// vertex sign.
WalkVertex vertex_step(const AutomaticSequence& seq, const WalkVertex& v,
                       const std::vector<int>& e, int l = 1);

struct WalkEdge {
  int to;
  int multiplicity;  // number of e in {0,1}^{s+1} inducing this transition
};

struct WalkGraph {
  AutomaticSequence seq;
  int s;
  std::vector<WalkVertex> vertices;  // BFS discovery order, v0 first
  std::vector<std::vector<WalkEdge>> edges;
  std::unordered_map<WalkVertex, int, WalkVertexHash> index;

  int num_corners() const { return 1 << s; }
  int num_choices() const { return 1 << (s + 1); }
  const WalkVertex& v0() const { return vertices[0]; }
  std::optional<int> find(const WalkVertex& v) const;
  WalkVertex initial_vertex() const;
  // R: sign flip, per vertex index; -1 where the flipped vertex is absent.
  std::vector<int> sign_flip_map() const;
};

WalkGraph build_graph(const AutomaticSequence& seq, int s,
                      std::size_t cap = 1'000'000);

struct GraphProperties {
  bool finite = false;
  bool strongly_connected = false;
  bool aperiodic = false;
  bool r_symmetric = false;
  std::size_t num_vertices = 0;
  std::size_t num_sccs = 0;
  int period = 0;  // period of the SCC containing v0
  std::vector<std::size_t> scc_sizes;
};

GraphProperties analyze_graph(const WalkGraph& g);

// Primitivity of the reachability pattern: some boolean power of the
// adjacency matrix is all-ones.  Independent cross-check of
// strongly_connected && aperiodic; quadratic memory, small graphs only.
bool reachability_primitive(const WalkGraph& g, std::size_t max_vertices = 4096);

struct WitnessStep {
  WalkVertex from;
  std::vector<int> e;
  int l;
  WalkVertex to;
};

struct PathWitness {
  std::vector<WitnessStep> steps;
  bool valid = false;
  std::string note;
};

// Replays the explicit construction of a path from the initial vertex to its
// sign flip and machine-checks every step.  Throws std::invalid_argument for
// s < 2 and std::runtime_error if a step fails to verify.
PathWitness witness_path(const AutomaticSequence& seq, int s);

// Row-stochastic matrix with entries num[i][j] / 2^log2_den.
struct DyadicMatrix {
  int size = 0;
  int log2_den = 0;
  std::vector<BigInt> num;  // row-major

  BigInt& at(int i, int j) { return num[static_cast<std::size_t>(i) * size + j]; }
  const BigInt& at(int i, int j) const {
    return num[static_cast<std::size_t>(i) * size + j];
  }
  bool row_stochastic() const;
  double value(int i, int j) const;
  static DyadicMatrix identity(int n);
};

DyadicMatrix multiply(const DyadicMatrix& a, const DyadicMatrix& b);
std::vector<BigInt> row_multiply(const std::vector<BigInt>& row,
                                 const DyadicMatrix& m);

DyadicMatrix transition_matrix(const WalkGraph& g);

std::string to_dot(const WalkGraph& g);
std::string vertex_label(const WalkGraph& g, int i);

}  // namespace gowers
