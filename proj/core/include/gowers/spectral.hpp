#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gowers/common.hpp"
#include "gowers/walk.hpp"

namespace gowers {

// Exact l-th power; denominator exponent l * log2_den.
DyadicMatrix matrix_power(const DyadicMatrix& p, int l);

struct StationaryDistribution {
  std::vector<double> probs;
  std::vector<BigRat> exact_probs;  // empty when solved iteratively
  double residual = 0.0;            // ||pi P - pi||_1
  bool exact = false;
};

// Frobenius-Perron fixed point; requires an ergodic chain (single SCC,
// period 1), otherwise throws std::runtime_error("not ergodic").
StationaryDistribution stationary(const WalkGraph& g,
                                  std::size_t exact_size_limit = 256);

// max_{v'} |P^l(v0, v') - P^l(v0, R(v'))| from exact l-step probabilities.
double signed_discrepancy(const WalkGraph& g, int l);
// d(1), ..., d(lmax) in one incremental pass.
std::vector<double> signed_discrepancies(const WalkGraph& g, int lmax);

// All eigenvalue moduli of the dense transition matrix, sorted descending.
std::vector<double> eigenvalue_moduli(const DyadicMatrix& p,
                                      std::size_t size_limit = 10'000);

struct DecayEstimate {
  double lambda2 = 0.0;
  double c = 0.0;        // -log2(lambda2)
  double c_prime = 0.0;  // c / 2^s
  double fit_c = 0.0;    // least-squares slope of -log2 d(l) over the window
  std::size_t num_vertices = 0;
  std::vector<std::pair<int, double>> samples;  // (l, discrepancy)
};

DecayEstimate spectral_gap(const WalkGraph& g, int lmax = 30, int fit_lo = 10,
                           int fit_hi = 30);

// Certified-decay bound on the 2^s-th power of the norm on [2^L]: the signed
// l-step mass difference at l = floor(L/2) plus tail_constant * 2^{-(L-l)}.
double norm_upper_bound(const AutomaticSequence& seq, int s, int L,
                        double tail_constant = 2.0);
double norm_upper_bound(const WalkGraph& g, int L, double tail_constant = 2.0);

}  // namespace gowers
