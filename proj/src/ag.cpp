#include "stn/ag.hpp"

#include <cmath>

#include "solver_common.hpp"
#include "stn/proximal.hpp"
#include "svd_util.hpp"

namespace stn {

namespace {

constexpr double kGammaCap = 1e30;

struct StepResult {
    double gamma = 0.0;
    Matrix theta;
    int prox_sweeps = 0;
    bool prox_converged = true;
};

// Backtracking on gamma against the quadratic upper bound. The accepted
// condition carries a tiny relative slack so that steps at gamma exactly
// equal to the curvature are not rejected by rounding.
StepResult line_search_ctx(const detail::LsContext& ctx, const Matrix& phi,
                           const RegPair& reg, double gamma_start, double growth,
                           double inner_tol, int inner_max_sweeps)
{
    const double s_phi = ctx.loss(phi);
    const Matrix grad = ctx.grad(phi);
    const double slack = 1e-12 * (1.0 + std::abs(s_phi));

    double gamma = gamma_start;
    StepResult out;
    while (true) {
        ProxInput in{phi - grad / gamma, 2.0 * reg.alpha / gamma, 2.0 * reg.beta / gamma};
        ProxResult pr = prox_composite(in, inner_tol, inner_max_sweeps);
        const Matrix diff = pr.theta - phi;
        const double bound = s_phi + (grad.array() * diff.array()).sum()
                             + 0.5 * gamma * diff.squaredNorm();
        if (ctx.loss(pr.theta) <= bound + slack) {
            out.gamma = gamma;
            out.theta = std::move(pr.theta);
            out.prox_sweeps = pr.sweeps;
            out.prox_converged = pr.converged;
            return out;
        }
        gamma *= growth;
        if (!(gamma < kGammaCap))
            throw NumericalError("line search failed: step parameter exceeded 1e30");
    }
}

}  // namespace

Matrix make_search_point(const Matrix& theta_curr, const Matrix& theta_prev,
                         double t_curr, double t_prev)
{
    detail::require_same_shape(theta_curr, theta_prev, "make_search_point");
    const double coeff = (t_prev - 1.0) / t_curr;
    if (coeff == 0.0) return theta_curr;
    return theta_curr + coeff * (theta_curr - theta_prev);
}

LineSearchResult line_search(const ProblemInstance& p, const Matrix& phi,
                             const RegPair& reg, double gamma_start, double growth,
                             double inner_tol, int inner_max_sweeps)
{
    if (!(gamma_start > 0.0)) throw DataError("gamma_start must be positive");
    if (!(growth > 1.0)) throw DataError("growth must exceed 1");
    detail::require_reg(reg);
    detail::LsContext ctx(p);
    StepResult st = line_search_ctx(ctx, phi, reg, gamma_start, growth,
                                    inner_tol, inner_max_sweeps);
    return {st.gamma, std::move(st.theta), st.prox_sweeps};
}

SolverResult ag_solve(const ProblemInstance& p, const RegPair& reg,
                      const SolverConfig& cfg, std::optional<CoefficientMatrix> theta0)
{
    validate_instance(p);
    validate_config(cfg);
    detail::require_reg(reg);

    detail::LsContext ctx(p);
    detail::WallClock clock;

    Matrix theta_curr = theta0 ? std::move(*theta0) : Matrix::Zero(p.h, p.k);
    if (theta_curr.rows() != p.h || theta_curr.cols() != p.k)
        throw DimensionError("theta0 dimensions do not match the instance");
    Matrix theta_prev = theta_curr;

    // Step parameter starts below the Lipschitz constant and is only ever
    // grown by the line search; it is carried across iterations.
    double gamma = cfg.gamma_init > 0.0
                       ? cfg.gamma_init
                       : std::max(1e-8, ctx.lipschitz() / 100.0);

    double t_prev = 1.0, t_curr = 1.0;
    double f_prev = ctx.objective(theta_curr, reg);

    SolverResult res;
    res.trace.push_back({0, f_prev, clock.seconds()});

    int cd_cap_hits = 0;
    int iter = 0;
    for (iter = 1; iter <= cfg.max_iter; ++iter) {
        const Matrix phi = make_search_point(theta_curr, theta_prev, t_curr, t_prev);
        StepResult st = line_search_ctx(ctx, phi, reg, gamma, cfg.gamma_growth,
                                        cfg.inner_tol, cfg.inner_max_iter);
        gamma = st.gamma;
        if (!st.prox_converged) ++cd_cap_hits;

        theta_prev = std::move(theta_curr);
        theta_curr = std::move(st.theta);

        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_curr * t_curr));
        t_prev = t_curr;
        t_curr = t_next;

        const double f = ctx.objective(theta_curr, reg);
        if (!std::isfinite(f))
            throw NumericalError("objective became non-finite during AG iterations");
        res.trace.push_back({iter, f, clock.seconds()});

        const double threshold = cfg.relative_obj_tol
                                     ? cfg.obj_tol * std::max(1.0, std::abs(f_prev))
                                     : cfg.obj_tol;
        const bool reached_target = std::isfinite(cfg.stop_at_objective)
                                    && f <= cfg.stop_at_objective;
        if (std::abs(f - f_prev) < threshold || reached_target) {
            res.converged = true;
            f_prev = f;
            break;
        }
        f_prev = f;
    }

    res.theta = std::move(theta_curr);
    res.objective = objective_eval(p, res.theta, reg);
    res.iterations = std::min(iter, cfg.max_iter);
    if (cd_cap_hits > 0)
        res.warnings.push_back("dual CD hit its sweep cap in " + std::to_string(cd_cap_hits)
                               + " proximal step(s); iterates remained dual-feasible");
    return res;
}

}  // namespace stn
