#pragma once

#include <optional>

#include "stn/types.hpp"

namespace stn {

// Intermediate ADMM iterates. The single-split variant leaves psi2 and
// gamma2 empty.
struct AdmmState {
    Matrix theta;
    Matrix psi1;
    Matrix psi2;
    Matrix gamma1;
    Matrix gamma2;
    int iter = 0;
};

struct AdmmDiagnostics {
    double primal_residual = 0.0;  // max ||theta - psi||_F over the splits
    double dual_residual = 0.0;    // max rho ||psi_k+1 - psi_k||_F over the splits
};

// Single-split ADMM: theta absorbs the loss and the l1 term (inner
// proximal-gradient loop), psi absorbs the trace norm (singular value
// thresholding), gamma is the multiplier. Penalty parameter cfg.rho1.
SolverResult admm1_solve(const ProblemInstance& p, const RegPair& reg,
                         const SolverConfig& cfg,
                         std::optional<CoefficientMatrix> theta0 = std::nullopt,
                         AdmmState* state_out = nullptr,
                         AdmmDiagnostics* diag_out = nullptr);

// Two-split ADMM: theta solves a fixed symmetric positive definite linear
// system (factored once), psi1 absorbs the trace norm via singular value
// thresholding, psi2 the l1 term via entrywise soft thresholding.
SolverResult admm2_solve(const ProblemInstance& p, const RegPair& reg,
                         const SolverConfig& cfg,
                         std::optional<CoefficientMatrix> theta0 = std::nullopt,
                         AdmmState* state_out = nullptr,
                         AdmmDiagnostics* diag_out = nullptr);

}  // namespace stn
