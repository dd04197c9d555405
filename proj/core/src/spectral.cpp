#include "gowers/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace gowers {

DyadicMatrix matrix_power(const DyadicMatrix& p, int l) {
  if (l < 0) throw std::invalid_argument("need l >= 0");
  DyadicMatrix out = DyadicMatrix::identity(p.size);
  for (int i = 0; i < l; ++i) out = multiply(out, p);
  return out;
}

namespace {

std::vector<int> checked_flip_map(const WalkGraph& g) {
  auto rmap = g.sign_flip_map();
  for (int r : rmap)
    if (r < 0) throw std::runtime_error("graph is not sign-symmetric");
  return rmap;
}

double fit_slope(const std::vector<std::pair<int, double>>& samples, int lo,
                 int hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (auto [l, d] : samples) {
    if (l < lo || l > hi || d <= 0) continue;
    double y = -std::log2(d);
    sx += l;
    sy += y;
    sxx += static_cast<double>(l) * l;
    sxy += l * y;
    ++m;
  }
  if (m < 2) return 0.0;
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace

StationaryDistribution stationary(const WalkGraph& g,
                                  std::size_t exact_size_limit) {
  auto props = analyze_graph(g);
  if (!props.strongly_connected || !props.aperiodic)
    throw std::runtime_error("not ergodic");
  const int n = static_cast<int>(g.vertices.size());
  DyadicMatrix p = transition_matrix(g);
  StationaryDistribution out;
  if (static_cast<std::size_t>(n) <= exact_size_limit) {
    // Solve (P^T - I) pi = 0 with sum pi = 1 by rational elimination.
    std::vector<std::vector<BigRat>> m(
        static_cast<std::size_t>(n),
        std::vector<BigRat>(static_cast<std::size_t>(n) + 1, 0));
    const BigInt den = BigInt(1) << p.log2_den;
    for (int i = 0; i < n - 1; ++i) {
      for (int j = 0; j < n; ++j) {
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            BigRat(p.at(j, i), den) - (i == j ? 1 : 0);
      }
    }
    for (int j = 0; j <= n; ++j)
      m[static_cast<std::size_t>(n) - 1][static_cast<std::size_t>(j)] = 1;
    // Gaussian elimination with partial pivoting by nonzero entry.
    for (int col = 0; col < n; ++col) {
      int pivot = -1;
      for (int row = col; row < n; ++row)
        if (m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] != 0) {
          pivot = row;
          break;
        }
      if (pivot < 0) throw std::runtime_error("singular stationary system");
      std::swap(m[static_cast<std::size_t>(col)], m[static_cast<std::size_t>(pivot)]);
      BigRat inv = m[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
      for (int j = col; j <= n; ++j)
        m[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)] /= inv;
      for (int row = 0; row < n; ++row) {
        if (row == col) continue;
        BigRat f = m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
        if (f == 0) continue;
        for (int j = col; j <= n; ++j)
          m[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)] -=
              f * m[static_cast<std::size_t>(col)][static_cast<std::size_t>(j)];
      }
    }
    out.exact = true;
    out.exact_probs.resize(static_cast<std::size_t>(n));
    out.probs.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      out.exact_probs[static_cast<std::size_t>(i)] =
          m[static_cast<std::size_t>(i)][static_cast<std::size_t>(n)];
      out.probs[static_cast<std::size_t>(i)] =
          to_double(out.exact_probs[static_cast<std::size_t>(i)]);
    }
    BigRat res = 0;
    for (int j = 0; j < n; ++j) {
      BigRat acc = -out.exact_probs[static_cast<std::size_t>(j)];
      for (int i = 0; i < n; ++i)
        acc += out.exact_probs[static_cast<std::size_t>(i)] * BigRat(p.at(i, j), den);
      res += acc < 0 ? -acc : acc;
    }
    out.residual = to_double(res);
    return out;
  }
  // Power iteration in long double for large graphs.
  std::vector<long double> v(static_cast<std::size_t>(n),
                             1.0L / static_cast<long double>(n));
  std::vector<long double> next(static_cast<std::size_t>(n));
  const long double den = std::ldexp(1.0L, p.log2_den);
  std::vector<std::vector<std::pair<int, long double>>> cols;  // by source
  cols.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (const auto& e : g.edges[static_cast<std::size_t>(i)])
      cols[static_cast<std::size_t>(i)].emplace_back(
          e.to, static_cast<long double>(e.multiplicity) / den);
  for (int iter = 0; iter < 20000; ++iter) {
    std::fill(next.begin(), next.end(), 0.0L);
    for (int i = 0; i < n; ++i)
      for (auto [j, w] : cols[static_cast<std::size_t>(i)])
        next[static_cast<std::size_t>(j)] += v[static_cast<std::size_t>(i)] * w;
    long double change = 0;
    for (int i = 0; i < n; ++i)
      change += std::abs(next[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(i)]);
    v.swap(next);
    if (change < 1e-16L) break;
  }
  std::fill(next.begin(), next.end(), 0.0L);
  for (int i = 0; i < n; ++i)
    for (auto [j, w] : cols[static_cast<std::size_t>(i)])
      next[static_cast<std::size_t>(j)] += v[static_cast<std::size_t>(i)] * w;
  long double res = 0;
  for (int i = 0; i < n; ++i)
    res += std::abs(next[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(i)]);
  out.exact = false;
  out.residual = static_cast<double>(res);
  out.probs.assign(v.begin(), v.end());
  return out;
}

namespace {

std::vector<double> discrepancies_impl(const WalkGraph& g, int lmax) {
  auto rmap = checked_flip_map(g);
  DyadicMatrix p = transition_matrix(g);
  const int n = p.size;
  std::vector<BigInt> row(static_cast<std::size_t>(n), 0);
  row[0] = 1;
  int log2_den = 0;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(lmax));
  for (int l = 1; l <= lmax; ++l) {
    row = row_multiply(row, p);
    log2_den += p.log2_den;
    BigInt best = 0;
    for (int i = 0; i < n; ++i) {
      BigInt d = row[static_cast<std::size_t>(i)] -
                 row[static_cast<std::size_t>(rmap[static_cast<std::size_t>(i)])];
      if (d < 0) d = -d;
      if (d > best) best = d;
    }
    out.push_back(std::ldexp(to_double(best), -log2_den));
  }
  return out;
}

}  // namespace

double signed_discrepancy(const WalkGraph& g, int l) {
  if (l == 0) {
    auto rmap = checked_flip_map(g);
    return rmap[0] == 0 ? 0.0 : 1.0;
  }
  return discrepancies_impl(g, l).back();
}

std::vector<double> signed_discrepancies(const WalkGraph& g, int lmax) {
  return discrepancies_impl(g, lmax);
}

std::vector<double> eigenvalue_moduli(const DyadicMatrix& p,
                                      std::size_t size_limit) {
  if (static_cast<std::size_t>(p.size) > size_limit)
    throw std::invalid_argument("dimension too large");
  Eigen::MatrixXd m(p.size, p.size);
  for (int i = 0; i < p.size; ++i)
    for (int j = 0; j < p.size; ++j) m(i, j) = p.value(i, j);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  std::vector<double> mods(static_cast<std::size_t>(p.size));
  for (int i = 0; i < p.size; ++i)
    mods[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()[i]);
  std::sort(mods.rbegin(), mods.rend());
  return mods;
}

DecayEstimate spectral_gap(const WalkGraph& g, int lmax, int fit_lo,
                           int fit_hi) {
  DecayEstimate est;
  est.num_vertices = g.vertices.size();
  auto mods = eigenvalue_moduli(transition_matrix(g));
  est.lambda2 = mods.size() > 1 ? mods[1] : 0.0;
  est.c = est.lambda2 > 0 ? -std::log2(est.lambda2)
                          : std::numeric_limits<double>::infinity();
  est.c_prime = est.c / std::ldexp(1.0, g.s);
  auto ds = signed_discrepancies(g, lmax);
  for (int l = 1; l <= lmax; ++l)
    est.samples.emplace_back(l, ds[static_cast<std::size_t>(l) - 1]);
  est.fit_c = fit_slope(est.samples, fit_lo, fit_hi);
  return est;
}

double norm_upper_bound(const WalkGraph& g, int L, double tail_constant) {
  if (L < 2) throw std::invalid_argument("need L >= 2");
  auto rmap = checked_flip_map(g);
  DyadicMatrix p = transition_matrix(g);
  const int n = p.size;
  const int l = L / 2;
  std::vector<BigInt> row(static_cast<std::size_t>(n), 0);
  row[0] = 1;
  for (int i = 0; i < l; ++i) row = row_multiply(row, p);
  BigInt sum = 0;
  for (int i = 0; i < n; ++i) {
    BigInt d = row[static_cast<std::size_t>(i)] -
               row[static_cast<std::size_t>(rmap[static_cast<std::size_t>(i)])];
    if (d < 0) d = -d;
    sum += d;
  }
  // each unordered pair {v, R(v)} counted twice
  double signed_mass = std::ldexp(to_double(sum), -l * p.log2_den) / 2.0;
  return signed_mass + tail_constant * std::ldexp(1.0, -(L - l));
}

double norm_upper_bound(const AutomaticSequence& seq, int s, int L,
                        double tail_constant) {
  WalkGraph g = build_graph(seq, s);
  return norm_upper_bound(g, L, tail_constant);
}

}  // namespace gowers
