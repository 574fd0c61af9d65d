#include "stn/proximal.hpp"

#include <cmath>

#include "svd_util.hpp"

namespace stn {

namespace {

void require_finite_weights(double alpha_hat, double beta_hat)
{
    if (!(alpha_hat >= 0.0) || !(beta_hat >= 0.0))
        throw DataError("prox weights must be nonnegative");
    if (std::isinf(alpha_hat) && std::isinf(beta_hat))
        throw DataError("prox weights cannot both be infinite");
}

}  // namespace

Matrix project_spectral_ball(const Matrix& m)
{
    detail::ThinSvd svd = detail::thin_svd(m);
    if (svd.sigma.size() == 0 || svd.sigma(0) <= 1.0) return m;
    Vector clipped = svd.sigma.cwiseMin(1.0);
    return svd.u * clipped.asDiagonal() * svd.v.transpose();
}

Matrix project_linf_ball(const Matrix& m)
{
    return m.cwiseMax(-1.0).cwiseMin(1.0);
}

double dual_objective(const ProxInput& in, const DualPair& d)
{
    // Kahan-compensated sum of squares. The absolute inner tolerance is
    // tiny (1e-8 and below) while the objective can reach ~n*k for
    // Gaussian inputs, so a naive sum drowns the stopping test in
    // rounding noise on large matrices.
    double sum = 0.0, comp = 0.0;
    const Index rows = in.phi_hat.rows(), cols = in.phi_hat.cols();
    for (Index j = 0; j < cols; ++j) {
        for (Index i = 0; i < rows; ++i) {
            double r = in.alpha_hat * d.l(i, j) + in.beta_hat * d.s(i, j)
                       - 2.0 * in.phi_hat(i, j);
            double term = r * r - comp;
            double next = sum + term;
            comp = (next - sum) - term;
            sum = next;
        }
    }
    return sum;
}

DualCdResult dual_cd_solve(const ProxInput& in, double tol, int max_sweeps)
{
    if (!(in.alpha_hat > 0.0) || !(in.beta_hat > 0.0))
        throw DataError("dual_cd_solve requires strictly positive weights");
    if (max_sweeps < 1) throw DataError("max_sweeps must be at least 1");

    const Matrix two_phi = 2.0 * in.phi_hat;
    DualCdResult res;
    res.dual.l = Matrix::Zero(in.phi_hat.rows(), in.phi_hat.cols());
    res.dual.s = Matrix::Zero(in.phi_hat.rows(), in.phi_hat.cols());

    double prev_obj = dual_objective(in, res.dual);
    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        res.dual.l = project_spectral_ball((two_phi - in.beta_hat * res.dual.s) / in.alpha_hat);
        res.dual.s = project_linf_ball((two_phi - in.alpha_hat * res.dual.l) / in.beta_hat);
        res.sweeps = sweep;
        res.objective = dual_objective(in, res.dual);
        if (prev_obj - res.objective < tol) {
            res.converged = true;
            break;
        }
        prev_obj = res.objective;
    }
    return res;
}

ProxResult prox_composite(const ProxInput& in, double tol, int max_sweeps)
{
    require_finite_weights(in.alpha_hat, in.beta_hat);
    ProxResult res;

    if (in.alpha_hat == 0.0 && in.beta_hat == 0.0) {
        res.theta = in.phi_hat;
        res.dual.l = Matrix::Zero(in.phi_hat.rows(), in.phi_hat.cols());
        res.dual.s = res.dual.l;
        return res;
    }
    if (in.alpha_hat == 0.0) {
        res.theta = soft_threshold(in.phi_hat, in.beta_hat / 2.0);
        res.dual.s = 2.0 * (in.phi_hat - res.theta) / in.beta_hat;
        res.dual.l = Matrix::Zero(in.phi_hat.rows(), in.phi_hat.cols());
        return res;
    }
    if (in.beta_hat == 0.0) {
        res.theta = svt(in.phi_hat, in.alpha_hat / 2.0);
        res.dual.l = 2.0 * (in.phi_hat - res.theta) / in.alpha_hat;
        res.dual.s = Matrix::Zero(in.phi_hat.rows(), in.phi_hat.cols());
        return res;
    }

    DualCdResult cd = dual_cd_solve(in, tol, max_sweeps);
    res.theta = in.phi_hat - 0.5 * (in.alpha_hat * cd.dual.l + in.beta_hat * cd.dual.s);
    res.dual = std::move(cd.dual);
    res.sweeps = cd.sweeps;
    res.converged = cd.converged;
    return res;
}

Matrix svt(const Matrix& m, double tau)
{
    if (tau < 0.0) throw DataError("svt threshold must be nonnegative");
    if (tau == 0.0) return m;
    detail::ThinSvd svd = detail::thin_svd(m);
    Index r = 0;
    while (r < svd.sigma.size() && svd.sigma(r) > tau) ++r;
    if (r == 0) return Matrix::Zero(m.rows(), m.cols());
    Vector shrunk = svd.sigma.head(r).array() - tau;
    return svd.u.leftCols(r) * shrunk.asDiagonal() * svd.v.leftCols(r).transpose();
}

Matrix soft_threshold(const Matrix& m, double tau)
{
    if (tau < 0.0) throw DataError("soft threshold must be nonnegative");
    if (tau == 0.0) return m;
    return m.unaryExpr([tau](double v) {
        double mag = std::abs(v) - tau;
        return mag > 0.0 ? (v > 0.0 ? mag : -mag) : 0.0;
    });
}

}  // namespace stn
