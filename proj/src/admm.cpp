#include "stn/admm.hpp"

#include <Eigen/Cholesky>

#include <cmath>

#include "solver_common.hpp"
#include "stn/proximal.hpp"

namespace stn {

namespace {

constexpr int kInnerProxGradCap = 10000;

void check_state_finite(const Matrix& theta, const Matrix& psi)
{
    if (!theta.allFinite() || !psi.allFinite())
        throw NumericalError("ADMM state became non-finite");
}

bool should_stop(const SolverConfig& cfg, double obj_change, double primal_resid,
                 double resid_scale)
{
    if (cfg.admm_objective_only) return obj_change < cfg.obj_tol;
    return obj_change < cfg.obj_tol && primal_resid < cfg.obj_tol * resid_scale;
}

}  // namespace

SolverResult admm1_solve(const ProblemInstance& p, const RegPair& reg,
                         const SolverConfig& cfg, std::optional<CoefficientMatrix> theta0,
                         AdmmState* state_out, AdmmDiagnostics* diag_out)
{
    validate_instance(p);
    validate_config(cfg);
    detail::require_reg(reg);

    detail::LsContext ctx(p);
    detail::WallClock clock;
    const double rho = cfg.rho1;
    const double resid_scale = std::sqrt(static_cast<double>(p.h * p.k));

    Matrix theta = theta0 ? std::move(*theta0) : Matrix::Zero(p.h, p.k);
    if (theta.rows() != p.h || theta.cols() != p.k)
        throw DimensionError("theta0 dimensions do not match the instance");
    Matrix psi = theta;
    Matrix gamma = Matrix::Zero(p.h, p.k);

    // The theta subproblem is rho-strongly convex; plain proximal-gradient
    // steps at the exact Lipschitz constant contract linearly.
    const double inner_lip = ctx.lipschitz() + rho;

    double f_prev = ctx.objective(theta, reg);
    SolverResult res;
    res.trace.push_back({0, f_prev, clock.seconds()});

    int inner_cap_hits = 0;
    double primal_resid = 0.0, dual_resid = 0.0;
    int iter = 0;
    for (iter = 1; iter <= cfg.max_iter; ++iter) {
        // theta update: min loss(theta) + beta ||theta||_1 + <theta, gamma>
        //               + rho/2 ||theta - psi||_F^2
        bool inner_ok = false;
        for (int t = 0; t < kInnerProxGradCap; ++t) {
            Matrix grad = ctx.grad(theta) + gamma + rho * (theta - psi);
            Matrix next = soft_threshold(theta - grad / inner_lip, reg.beta / inner_lip);
            const double step = (next - theta).norm();
            theta = std::move(next);
            if (step <= cfg.inner_tol * (1.0 + theta.norm())) {
                inner_ok = true;
                break;
            }
        }
        if (!inner_ok) ++inner_cap_hits;

        Matrix psi_next = svt(theta + gamma / rho, reg.alpha / rho);
        dual_resid = rho * (psi_next - psi).norm();
        psi = std::move(psi_next);
        gamma += rho * (theta - psi);

        check_state_finite(theta, psi);
        const double f = ctx.objective(theta, reg);
        if (!std::isfinite(f))
            throw NumericalError("objective became non-finite during ADMM iterations");
        res.trace.push_back({iter, f, clock.seconds()});

        primal_resid = (theta - psi).norm();
        const bool reached_target = std::isfinite(cfg.stop_at_objective)
                                    && f <= cfg.stop_at_objective;
        if (should_stop(cfg, std::abs(f - f_prev), primal_resid, resid_scale)
            || reached_target) {
            res.converged = true;
            f_prev = f;
            break;
        }
        f_prev = f;
    }

    if (state_out) *state_out = {theta, psi, Matrix(), gamma, Matrix(), std::min(iter, cfg.max_iter)};
    if (diag_out) *diag_out = {primal_resid, dual_resid};

    res.theta = std::move(theta);
    res.objective = objective_eval(p, res.theta, reg);
    res.iterations = std::min(iter, cfg.max_iter);
    if (inner_cap_hits > 0)
        res.warnings.push_back("theta subproblem hit its inner iteration cap "
                               + std::to_string(inner_cap_hits)
                               + " time(s); last primal residual "
                               + std::to_string(primal_resid));
    return res;
}

SolverResult admm2_solve(const ProblemInstance& p, const RegPair& reg,
                         const SolverConfig& cfg, std::optional<CoefficientMatrix> theta0,
                         AdmmState* state_out, AdmmDiagnostics* diag_out)
{
    validate_instance(p);
    validate_config(cfg);
    detail::require_reg(reg);

    detail::LsContext ctx(p);
    detail::WallClock clock;
    const double rho1 = cfg.rho1, rho2 = cfg.rho2;
    const double resid_scale = std::sqrt(static_cast<double>(p.h * p.k));

    // (2/N) gx'gx + (rho1 + rho2) I is positive definite for any positive
    // penalties; factor it once and reuse across iterations.
    Matrix system = (2.0 * ctx.inv_bn) * ctx.gtg;
    system.diagonal().array() += rho1 + rho2;
    Eigen::LLT<Matrix> llt(system);
    if (llt.info() != Eigen::Success)
        throw NumericalError("ADMM2 system factorization failed");

    Matrix theta = theta0 ? std::move(*theta0) : Matrix::Zero(p.h, p.k);
    if (theta.rows() != p.h || theta.cols() != p.k)
        throw DimensionError("theta0 dimensions do not match the instance");
    Matrix psi1 = theta, psi2 = theta;
    Matrix gamma1 = Matrix::Zero(p.h, p.k);
    Matrix gamma2 = Matrix::Zero(p.h, p.k);
    const Matrix rhs_const = (2.0 * ctx.inv_bn) * ctx.gty;

    double f_prev = ctx.objective(theta, reg);
    SolverResult res;
    res.trace.push_back({0, f_prev, clock.seconds()});

    double primal_resid = 0.0, dual_resid = 0.0;
    int iter = 0;
    for (iter = 1; iter <= cfg.max_iter; ++iter) {
        theta = llt.solve(rhs_const - gamma1 - gamma2 + rho1 * psi1 + rho2 * psi2);

        Matrix psi1_next = svt(theta + gamma1 / rho1, reg.alpha / rho1);
        Matrix psi2_next = soft_threshold(theta + gamma2 / rho2, reg.beta / rho2);
        dual_resid = std::max(rho1 * (psi1_next - psi1).norm(),
                              rho2 * (psi2_next - psi2).norm());
        psi1 = std::move(psi1_next);
        psi2 = std::move(psi2_next);

        gamma1 += rho1 * (theta - psi1);
        gamma2 += rho2 * (theta - psi2);

        check_state_finite(theta, psi1);
        check_state_finite(theta, psi2);
        const double f = ctx.objective(theta, reg);
        if (!std::isfinite(f))
            throw NumericalError("objective became non-finite during ADMM iterations");
        res.trace.push_back({iter, f, clock.seconds()});

        primal_resid = std::max((theta - psi1).norm(), (theta - psi2).norm());
        const bool reached_target = std::isfinite(cfg.stop_at_objective)
                                    && f <= cfg.stop_at_objective;
        if (should_stop(cfg, std::abs(f - f_prev), primal_resid, resid_scale)
            || reached_target) {
            res.converged = true;
            f_prev = f;
            break;
        }
        f_prev = f;
    }

    if (state_out) *state_out = {theta, psi1, psi2, gamma1, gamma2, std::min(iter, cfg.max_iter)};
    if (diag_out) *diag_out = {primal_resid, dual_resid};

    res.theta = std::move(theta);
    res.objective = objective_eval(p, res.theta, reg);
    res.iterations = std::min(iter, cfg.max_iter);
    return res;
}

}  // namespace stn
