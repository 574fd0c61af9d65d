#pragma once

#include "stn/types.hpp"

namespace stn {

// Dual variables of the proximal subproblem: l lives in the unit
// spectral-norm ball, s in the unit entrywise-infinity ball.
struct DualPair {
    Matrix l;
    Matrix s;
};

// Target of one proximal step. phi_hat is the gradient-shifted point
// phi - grad/gamma; alpha_hat and beta_hat are the 2*alpha/gamma and
// 2*beta/gamma rescalings of the regularization weights.
struct ProxInput {
    Matrix phi_hat;
    double alpha_hat = 0.0;
    double beta_hat = 0.0;
};

// Frobenius-nearest matrix with operator norm <= 1: clip the singular
// values of m at 1.
Matrix project_spectral_ball(const Matrix& m);

// Frobenius-nearest matrix with entries in [-1, 1]: entrywise clamp.
Matrix project_linf_ball(const Matrix& m);

// || alpha_hat L + beta_hat S - 2 phi_hat ||_F^2, compensated summation.
double dual_objective(const ProxInput& in, const DualPair& d);

struct DualCdResult {
    DualPair dual;
    int sweeps = 0;
    bool converged = false;
    double objective = 0.0;  // dual objective at the final iterate
};

// Block coordinate descent on the dual: each sweep projects
// (2 phi_hat - beta_hat S) / alpha_hat onto the spectral ball, then
// (2 phi_hat - alpha_hat L) / beta_hat onto the infinity ball, starting
// from L = S = 0. Stops when the dual objective decreases by less than
// tol between sweeps. Requires alpha_hat > 0 and beta_hat > 0.
// Hitting max_sweeps is not an error; the iterate stays dual-feasible.
DualCdResult dual_cd_solve(const ProxInput& in, double tol, int max_sweeps);

struct ProxResult {
    CoefficientMatrix theta;
    DualPair dual;
    int sweeps = 0;
    bool converged = true;
};

// Minimizer of ||theta - phi_hat||_F^2 + alpha_hat ||theta||_* +
// beta_hat ||theta||_1, recovered from the dual as
// theta = phi_hat - (alpha_hat L + beta_hat S) / 2. Degenerate weights
// bypass the dual solver: alpha_hat = 0 reduces to entrywise soft
// thresholding, beta_hat = 0 to singular value thresholding.
ProxResult prox_composite(const ProxInput& in, double tol, int max_sweeps);

// Singular value thresholding: U diag((sigma_i - tau)_+) V'.
Matrix svt(const Matrix& m, double tau);

// Entrywise sign(m) * max(|m| - tau, 0).
Matrix soft_threshold(const Matrix& m, double tau);

}  // namespace stn
