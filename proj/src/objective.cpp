#include "stn/objective.hpp"

#include <sstream>

#include "svd_util.hpp"

namespace stn {

namespace {

void require_theta_dims(const ProblemInstance& p, const Matrix& theta)
{
    if (p.gx.rows() != p.y.rows())
        throw DimensionError("gx and y row counts differ");
    if (theta.rows() != p.h || theta.cols() != p.k) {
        std::ostringstream msg;
        msg << "theta is " << theta.rows() << "x" << theta.cols()
            << " but the instance expects " << p.h << "x" << p.k;
        throw DimensionError(msg.str());
    }
}

}  // namespace

double empirical_error(const ProblemInstance& p, const Matrix& theta)
{
    require_theta_dims(p, theta);
    return (p.gx * theta - p.y).squaredNorm() / static_cast<double>(p.big_n);
}

Matrix smooth_grad(const ProblemInstance& p, const Matrix& theta)
{
    require_theta_dims(p, theta);
    return (2.0 / static_cast<double>(p.big_n)) * (p.gx.transpose() * (p.gx * theta - p.y));
}

double trace_norm(const Matrix& m)
{
    return detail::singular_values(m).sum();
}

double operator_norm(const Matrix& m)
{
    Vector s = detail::singular_values(m);
    return s.size() > 0 ? s(0) : 0.0;
}

double l1_norm(const Matrix& m)
{
    return m.cwiseAbs().sum();
}

double objective_eval(const ProblemInstance& p, const Matrix& theta, const RegPair& reg)
{
    double value = empirical_error(p, theta);
    if (reg.alpha != 0.0) value += reg.alpha * trace_norm(theta);
    if (reg.beta != 0.0) value += reg.beta * l1_norm(theta);
    return value;
}

}  // namespace stn
