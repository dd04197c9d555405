#include "gowers/walk.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace gowers {

std::size_t WalkVertexHash::operator()(const WalkVertex& v) const {
  std::size_t h = 1469598103934665603ull;
  auto mix = [&h](std::size_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  for (auto l : v.labels) mix(l);
  for (auto r : v.offsets) mix(r);
  mix(static_cast<std::size_t>(v.sign + 2));
  return h;
}

std::vector<int> delta_offsets(const std::vector<int>& offsets,
                               const std::vector<int>& e) {
  return delta_offsets_l(offsets, e, 1);
}

std::vector<int> delta_offsets_l(const std::vector<int>& offsets,
                                 const std::vector<int>& e, int l) {
  const std::size_t corners = offsets.size();
  std::vector<int> out(corners);
  for (std::size_t w = 0; w < corners; ++w) {
    long long c = e[0];
    for (std::size_t i = 1; i < e.size(); ++i)
      if ((w >> (i - 1)) & 1) c += e[i];
    out[w] = static_cast<int>((offsets[w] + c) >> l);
  }
  return out;
}

WalkVertex vertex_step(const AutomaticSequence& seq, const WalkVertex& v,
                       const std::vector<int>& e, int l) {
  const std::size_t corners = v.offsets.size();
  WalkVertex out;
  out.labels.resize(corners);
  out.offsets.resize(corners);
  int sign = v.sign;
  for (std::size_t w = 0; w < corners; ++w) {
    long long c = e[0];
    for (std::size_t i = 1; i < e.size(); ++i)
      if ((w >> (i - 1)) & 1) c += e[i];
    long long x = v.offsets[w] + c;
    long long m = x & ((1ll << l) - 1);
    int elem = v.labels[w];
    for (int j = 0; j < l; ++j) {
      KernelStep st = seq.lsb_step(elem, static_cast<int>(m & 1));
      sign *= st.sign;
      elem = st.next;
      m >>= 1;
    }
    out.labels[w] = static_cast<std::uint16_t>(elem);
    out.offsets[w] = static_cast<std::uint8_t>(x >> l);
  }
  out.sign = static_cast<std::int8_t>(sign);
  return out;
}

std::optional<int> WalkGraph::find(const WalkVertex& v) const {
  auto it = index.find(v);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

WalkVertex WalkGraph::initial_vertex() const {
  WalkVertex v;
  v.labels.assign(static_cast<std::size_t>(num_corners()), 0);
  v.offsets.assign(static_cast<std::size_t>(num_corners()), 0);
  v.sign = 1;
  return v;
}

std::vector<int> WalkGraph::sign_flip_map() const {
  std::vector<int> out(vertices.size(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    auto j = find(vertices[i].flipped());
    if (j) out[i] = *j;
  }
  return out;
}

WalkGraph build_graph(const AutomaticSequence& seq, int s, std::size_t cap) {
  if (s < 1) throw std::invalid_argument("s must be >= 1");
  WalkGraph g{seq, s, {}, {}, {}};
  WalkVertex v0;
  v0.labels.assign(1u << s, 0);
  v0.offsets.assign(1u << s, 0);
  v0.sign = 1;
  g.vertices.push_back(v0);
  g.index.emplace(v0, 0);
  std::deque<int> queue{0};
  const int choices = 1 << (s + 1);
  std::vector<int> e(static_cast<std::size_t>(s) + 1);
  while (!queue.empty()) {
    int i = queue.front();
    queue.pop_front();
    std::map<int, int> row;  // target -> multiplicity, ordered for determinism
    for (int E = 0; E < choices; ++E) {
      for (int b = 0; b <= s; ++b) e[static_cast<std::size_t>(b)] = (E >> b) & 1;
      WalkVertex w = vertex_step(seq, g.vertices[static_cast<std::size_t>(i)], e, 1);
      auto it = g.index.find(w);
      int target;
      if (it == g.index.end()) {
        if (g.vertices.size() >= cap)
          throw CapExceeded("walk vertex cap exceeded (cap " +
                            std::to_string(cap) + ")");
        target = static_cast<int>(g.vertices.size());
        g.index.emplace(w, target);
        g.vertices.push_back(std::move(w));
        queue.push_back(target);
      } else {
        target = it->second;
      }
      ++row[target];
    }
    g.edges.resize(g.vertices.size());
    auto& out = g.edges[static_cast<std::size_t>(i)];
    out.reserve(row.size());
    for (auto [to, mult] : row) out.push_back(WalkEdge{to, mult});
  }
  g.edges.resize(g.vertices.size());
  return g;
}

namespace {

// Iterative Tarjan SCC; components in reverse topological order.
std::vector<std::vector<int>> tarjan_sccs(
    const std::vector<std::vector<WalkEdge>>& edges) {
  const int n = static_cast<int>(edges.size());
  std::vector<int> index(static_cast<std::size_t>(n), -1),
      low(static_cast<std::size_t>(n), 0);
  std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  std::vector<std::vector<int>> comps;
  int counter = 0;
  struct Frame {
    int v;
    std::size_t next_edge;
  };
  std::vector<Frame> work;
  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    work.push_back({root, 0});
    index[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = counter++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = 1;
    while (!work.empty()) {
      Frame& f = work.back();
      const auto& out = edges[static_cast<std::size_t>(f.v)];
      if (f.next_edge < out.size()) {
        int w = out[f.next_edge++].to;
        if (index[static_cast<std::size_t>(w)] == -1) {
          index[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = counter++;
          stack.push_back(w);
          on_stack[static_cast<std::size_t>(w)] = 1;
          work.push_back({w, 0});
        } else if (on_stack[static_cast<std::size_t>(w)]) {
          low[static_cast<std::size_t>(f.v)] =
              std::min(low[static_cast<std::size_t>(f.v)], index[static_cast<std::size_t>(w)]);
        }
      } else {
        int v = f.v;
        work.pop_back();
        if (!work.empty())
          low[static_cast<std::size_t>(work.back().v)] =
              std::min(low[static_cast<std::size_t>(work.back().v)], low[static_cast<std::size_t>(v)]);
        if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
          std::vector<int> comp;
          while (true) {
            int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = 0;
            comp.push_back(w);
            if (w == v) break;
          }
          comps.push_back(std::move(comp));
        }
      }
    }
  }
  return comps;
}

}  // namespace

GraphProperties analyze_graph(const WalkGraph& g) {
  GraphProperties props;
  const int n = static_cast<int>(g.vertices.size());
  props.finite = true;  // BFS closure terminated under the cap
  props.num_vertices = static_cast<std::size_t>(n);

  auto comps = tarjan_sccs(g.edges);
  props.num_sccs = comps.size();
  for (const auto& c : comps) props.scc_sizes.push_back(c.size());
  std::sort(props.scc_sizes.rbegin(), props.scc_sizes.rend());
  props.strongly_connected = comps.size() == 1;

  // Period of v0's SCC: gcd of depth[u] + 1 - depth[w] over intra-SCC edges,
  // depths from BFS inside the component.
  std::vector<int> comp_of(static_cast<std::size_t>(n), -1);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (int v : comps[c]) comp_of[static_cast<std::size_t>(v)] = static_cast<int>(c);
  const int c0 = comp_of[0];
  std::vector<int> depth(static_cast<std::size_t>(n), -1);
  depth[0] = 0;
  std::deque<int> q{0};
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (const auto& edge : g.edges[static_cast<std::size_t>(u)]) {
      if (comp_of[static_cast<std::size_t>(edge.to)] == c0 &&
          depth[static_cast<std::size_t>(edge.to)] == -1) {
        depth[static_cast<std::size_t>(edge.to)] = depth[static_cast<std::size_t>(u)] + 1;
        q.push_back(edge.to);
      }
    }
  }
  long long gcd = 0;
  for (int u = 0; u < n; ++u) {
    if (comp_of[static_cast<std::size_t>(u)] != c0 || depth[static_cast<std::size_t>(u)] < 0)
      continue;
    for (const auto& edge : g.edges[static_cast<std::size_t>(u)]) {
      if (comp_of[static_cast<std::size_t>(edge.to)] != c0) continue;
      gcd = std::gcd(gcd, static_cast<long long>(depth[static_cast<std::size_t>(u)]) + 1 -
                              depth[static_cast<std::size_t>(edge.to)]);
    }
  }
  props.period = static_cast<int>(gcd < 0 ? -gcd : gcd);
  props.aperiodic = props.period == 1;

  // R-symmetry: vertex set closed under the sign flip and transition
  // multiplicities preserved.
  auto rmap = g.sign_flip_map();
  props.r_symmetric = true;
  for (int i = 0; i < n && props.r_symmetric; ++i) {
    if (rmap[static_cast<std::size_t>(i)] < 0) {
      props.r_symmetric = false;
      break;
    }
    for (const auto& edge : g.edges[static_cast<std::size_t>(i)]) {
      int ri = rmap[static_cast<std::size_t>(i)];
      int rt = rmap[static_cast<std::size_t>(edge.to)];
      if (rt < 0) {
        props.r_symmetric = false;
        break;
      }
      const auto& row = g.edges[static_cast<std::size_t>(ri)];
      auto it = std::find_if(row.begin(), row.end(),
                             [rt](const WalkEdge& e) { return e.to == rt; });
      if (it == row.end() || it->multiplicity != edge.multiplicity) {
        props.r_symmetric = false;
        break;
      }
    }
  }
  return props;
}

bool reachability_primitive(const WalkGraph& g, std::size_t max_vertices) {
  const std::size_t n = g.vertices.size();
  if (n > max_vertices)
    throw std::invalid_argument("graph too large for the boolean-power check");
  const std::size_t words = (n + 63) / 64;
  using Row = std::vector<std::uint64_t>;
  std::vector<Row> mat(n, Row(words, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& e : g.edges[i])
      mat[i][static_cast<std::size_t>(e.to) / 64] |= 1ull
                                                     << (static_cast<std::size_t>(e.to) % 64);
  auto all_ones = [&](const std::vector<Row>& m) {
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t count = 0;
      for (std::size_t w = 0; w < words; ++w)
        count += static_cast<std::size_t>(__builtin_popcountll(m[i][w]));
      if (count != n) return false;
    }
    return true;
  };
  auto square = [&](const std::vector<Row>& m) {
    std::vector<Row> out(n, Row(words, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if ((m[i][j / 64] >> (j % 64)) & 1)
          for (std::size_t w = 0; w < words; ++w) out[i][w] |= m[j][w];
    return out;
  };
  // exponents 1, 2, 4, ... up to >= n^2 (Wielandt bound n^2 - 2n + 2)
  std::uint64_t exponent = 1;
  auto cur = mat;
  while (true) {
    if (all_ones(cur)) return true;
    if (exponent >= n * n) return false;
    cur = square(cur);
    exponent *= 2;
  }
}

PathWitness witness_path(const AutomaticSequence& seq, int s) {
  if (s < 2) throw std::invalid_argument("witness path requires s >= 2");
  PathWitness w;
  const std::size_t corners = 1u << s;
  WalkVertex v0;
  v0.labels.assign(corners, 0);
  v0.offsets.assign(corners, 0);
  v0.sign = 1;

  auto check_step = [&](const WalkVertex& from, const std::vector<int>& e,
                        int l, const WalkVertex& expect) {
    WalkVertex got = vertex_step(seq, from, e, l);
    if (!(got == expect)) throw std::runtime_error("witness invalid");
    w.steps.push_back(WitnessStep{from, e, l, got});
    return got;
  };

  if (seq.id() == "tm") {
    // s+1 one-step edges through the staircase offset vectors.
    auto stair = [&](int j) {
      WalkVertex v = v0;
      for (std::size_t W = 0; W < corners; ++W) {
        bool all = true;
        for (int i = 1; i <= j; ++i)
          if (!((W >> (i - 1)) & 1)) all = false;
        v.offsets[W] = static_cast<std::uint8_t>(j >= 1 && all ? 1 : 0);
      }
      return v;
    };
    WalkVertex cur = v0;
    std::vector<int> e(static_cast<std::size_t>(s) + 1, 0);
    e[0] = e[1] = 1;
    cur = check_step(cur, e, 1, stair(1));
    for (int j = 1; j < s; ++j) {
      std::fill(e.begin(), e.end(), 0);
      e[static_cast<std::size_t>(j) + 1] = 1;
      cur = check_step(cur, e, 1, stair(j + 1));
    }
    std::fill(e.begin(), e.end(), 0);
    check_step(cur, e, 1, v0.flipped());
    w.valid = true;
    w.note = "one-step staircase";
    return w;
  }

  // Single l-step jump, l = s + pattern length: e_i = 2^{i-1}, e_0 chosen in
  // [2^{s-1}, 2^s) so that the product of sequence values over the shifted
  // block is -1.
  const int l = s + static_cast<int>(seq.pattern_length());
  for (int e0 = 1 << (s - 1); e0 < (1 << s); ++e0) {
    int sigma = 1;
    for (int m = 0; m < (1 << s); ++m)
      sigma *= seq.eval(static_cast<std::uint64_t>(m + e0));
    if (sigma != -1) continue;
    std::vector<int> e(static_cast<std::size_t>(s) + 1);
    e[0] = e0;
    for (int i = 1; i <= s; ++i) e[static_cast<std::size_t>(i)] = 1 << (i - 1);
    check_step(v0, e, l, v0.flipped());
    w.valid = true;
    w.note = "l-step jump, l=" + std::to_string(l) + ", e0=" + std::to_string(e0);
    return w;
  }
  throw std::runtime_error("witness invalid: no suitable e0");
}

bool DyadicMatrix::row_stochastic() const {
  BigInt den = BigInt(1) << log2_den;
  for (int i = 0; i < size; ++i) {
    BigInt sum = 0;
    for (int j = 0; j < size; ++j) {
      if (at(i, j) < 0) return false;
      sum += at(i, j);
    }
    if (sum != den) return false;
  }
  return true;
}

double DyadicMatrix::value(int i, int j) const {
  return std::ldexp(to_double(at(i, j)), -log2_den);
}

DyadicMatrix DyadicMatrix::identity(int n) {
  DyadicMatrix m;
  m.size = n;
  m.log2_den = 0;
  m.num.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

DyadicMatrix multiply(const DyadicMatrix& a, const DyadicMatrix& b) {
  if (a.size != b.size) throw std::invalid_argument("matrix size mismatch");
  DyadicMatrix c;
  c.size = a.size;
  c.log2_den = a.log2_den + b.log2_den;
  c.num.assign(static_cast<std::size_t>(a.size) * a.size, 0);
  for (int i = 0; i < a.size; ++i)
    for (int k = 0; k < a.size; ++k) {
      const BigInt& aik = a.at(i, k);
      if (aik == 0) continue;
      for (int j = 0; j < a.size; ++j)
        if (b.at(k, j) != 0) c.at(i, j) += aik * b.at(k, j);
    }
  return c;
}

std::vector<BigInt> row_multiply(const std::vector<BigInt>& row,
                                 const DyadicMatrix& m) {
  std::vector<BigInt> out(static_cast<std::size_t>(m.size), 0);
  for (int k = 0; k < m.size; ++k) {
    if (row[static_cast<std::size_t>(k)] == 0) continue;
    for (int j = 0; j < m.size; ++j)
      if (m.at(k, j) != 0)
        out[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(k)] * m.at(k, j);
  }
  return out;
}

DyadicMatrix transition_matrix(const WalkGraph& g) {
  DyadicMatrix m;
  m.size = static_cast<int>(g.vertices.size());
  m.log2_den = g.s + 1;
  m.num.assign(static_cast<std::size_t>(m.size) * m.size, 0);
  for (int i = 0; i < m.size; ++i)
    for (const auto& e : g.edges[static_cast<std::size_t>(i)])
      m.at(i, e.to) = e.multiplicity;
  return m;
}

std::string vertex_label(const WalkGraph& g, int i) {
  const WalkVertex& v = g.vertices[static_cast<std::size_t>(i)];
  std::ostringstream out;
  out << "r=[";
  for (std::size_t w = 0; w < v.offsets.size(); ++w)
    out << (w ? "," : "") << static_cast<int>(v.offsets[w]);
  out << "]";
  if (g.seq.kernel_size() > 1) {
    out << " a=[";
    for (std::size_t w = 0; w < v.labels.size(); ++w)
      out << (w ? "," : "") << g.seq.element_name(v.labels[w]);
    out << "]";
  }
  out << " " << (v.sign > 0 ? "+" : "-");
  return out.str();
}

std::string to_dot(const WalkGraph& g) {
  std::ostringstream out;
  out << "digraph walk {\n";
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    out << "  v" << i << " [label=\"" << vertex_label(g, static_cast<int>(i))
        << "\"];\n";
  const int den = g.num_choices();
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (const auto& e : g.edges[i])
      out << "  v" << i << " -> v" << e.to << " [label=\"" << e.multiplicity
          << "/" << den << "\"];\n";
  out << "}\n";
  return out.str();
}

}  // namespace gowers
