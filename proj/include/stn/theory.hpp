#pragma once

#include <cstdint>

#include "stn/types.hpp"

namespace stn {

struct SplitPair {
    Matrix s0;
    Matrix s1;
};

// Splits delta against theta's singular subspaces. With theta = U [S 0; 0 0] V'
// (full SVD, rank r) and dhat = U' delta V partitioned conformally, s0 keeps
// the three blocks touching the range of theta and s1 keeps the (2,2) block.
// Guarantees: s0 + s1 = delta, rank(s0) <= 2r, theta s1' = 0, theta' s1 = 0,
// and ||theta + s1||_* = ||theta||_* + ||s1||_*.
SplitPair decompose_s0_s1(const Matrix& theta, const Matrix& delta);

struct CheckResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

// ||dh||_* + ||theta||_* - ||theta_hat||_* <= 2 ||s0(dh)||_* with
// dh = theta_hat - theta and s0 taken against theta.
CheckResult check_trace_bound(const Matrix& theta_hat, const Matrix& theta);

// ||dh||_1 + ||theta||_1 - ||theta_hat||_1 <= 2 ||dh restricted to the
// support of theta||_1.
CheckResult check_l1_bound(const Matrix& theta_hat, const Matrix& theta);

// Entries of m on the support of support_of (|entry| > 1e-12), zero elsewhere.
Matrix restrict_to_support(const Matrix& m, const Matrix& support_of);

// The regularization sum 2 sigma_max(gx) sigma_w sqrt(n) (1 + sqrt(k/n) + t) / N.
double lemma_reg_sum(const Matrix& gx, Index k, double sigma_w, double t);

struct ConcentrationResult {
    double empirical_prob = 0.0;
    double bound = 0.0;   // 1 - exp(-n t^2 / 2)
    double lambda = 0.0;
};

// Monte Carlo check of the noise-design concentration bound: draws W with
// N(0, sigma_w^2) entries and counts how often ||W' gx||_2 / N <= lambda / 2.
// Per-trial generators are seeded with seed + trial index. trials >= 1000.
ConcentrationResult concentration_mc(const Matrix& gx, Index k, double sigma_w,
                                     double t, int trials, std::uint64_t seed);

// The in-sample inequality for an (approximate) minimizer theta_hat against
// any comparison theta:
//   ||gx theta_hat - f||_F^2 / N <= ||gx theta - f||_F^2 / N
//     + 2 alpha ||s0(theta_hat - theta)||_* + 2 beta ||(theta_hat - theta)_J||_1
// with a solver-accuracy slack of 1e-5 (1 + |rhs|).
CheckResult check_lemma1(const ProblemInstance& p, const Matrix& theta_hat,
                         const Matrix& theta, const RegPair& reg,
                         const Matrix& f_true);

}  // namespace stn
