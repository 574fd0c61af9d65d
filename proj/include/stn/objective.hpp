#pragma once

#include "stn/types.hpp"

namespace stn {

// Singular values below kRankRelTol * sigma_max count as zero for every
// rank decision in the library.
inline constexpr double kRankRelTol = 1e-12;

// ||gx theta - y||_F^2 / N with N = n * k.
double empirical_error(const ProblemInstance& p, const Matrix& theta);

// Gradient of the empirical error: (2/N) gx' (gx theta - y).
Matrix smooth_grad(const ProblemInstance& p, const Matrix& theta);

// Sum of singular values.
double trace_norm(const Matrix& m);

// Largest singular value.
double operator_norm(const Matrix& m);

// Sum of absolute entries.
double l1_norm(const Matrix& m);

// empirical_error + alpha * trace_norm + beta * l1_norm.
double objective_eval(const ProblemInstance& p, const Matrix& theta, const RegPair& reg);

}  // namespace stn
