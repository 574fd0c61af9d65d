#pragma once

#include <optional>

#include "stn/types.hpp"

namespace stn {

// Nesterov search point: theta_curr + ((t_prev - 1) / t_curr) * (theta_curr - theta_prev).
Matrix make_search_point(const Matrix& theta_curr, const Matrix& theta_prev,
                         double t_curr, double t_prev);

struct LineSearchResult {
    double gamma = 0.0;
    CoefficientMatrix theta;
    int prox_sweeps = 0;
};

// Smallest gamma in {gamma_start * growth^i} whose proximal step satisfies
// the quadratic upper-bound condition
//   S(theta) <= S(phi) + <grad S(phi), theta - phi> + gamma/2 ||theta - phi||_F^2.
// Throws NumericalError if gamma exceeds 1e30 without acceptance.
LineSearchResult line_search(const ProblemInstance& p, const Matrix& phi,
                             const RegPair& reg, double gamma_start, double growth,
                             double inner_tol = 1e-10, int inner_max_sweeps = 50);

// Accelerated gradient solve of
//   min_theta empirical_error(theta) + alpha ||theta||_* + beta ||theta||_1
// with backtracking on the step parameter (carried across iterations) and
// the proximal step evaluated through its dual. theta0 defaults to zero.
SolverResult ag_solve(const ProblemInstance& p, const RegPair& reg,
                      const SolverConfig& cfg,
                      std::optional<CoefficientMatrix> theta0 = std::nullopt);

}  // namespace stn
