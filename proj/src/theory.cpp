#include "stn/theory.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

#include "stn/objective.hpp"
#include "svd_util.hpp"

namespace stn {

namespace {

constexpr double kSupportTol = 1e-12;

}  // namespace

SplitPair decompose_s0_s1(const Matrix& theta, const Matrix& delta)
{
    detail::require_same_shape(theta, delta, "decompose_s0_s1");

    // Full SVD: the block construction needs the completed orthogonal bases.
    Eigen::JacobiSVD<Matrix> svd(theta, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success)
        throw NumericalError("SVD did not converge");
    const Vector& sigma = svd.singularValues();
    const double cutoff = sigma.size() > 0 ? kRankRelTol * sigma(0) : 0.0;
    Index r = 0;
    while (r < sigma.size() && sigma(r) > cutoff && sigma(r) > 0.0) ++r;

    Matrix dhat = svd.matrixU().transpose() * delta * svd.matrixV();
    Matrix s1hat = Matrix::Zero(dhat.rows(), dhat.cols());
    s1hat.bottomRightCorner(dhat.rows() - r, dhat.cols() - r) =
        dhat.bottomRightCorner(dhat.rows() - r, dhat.cols() - r);
    Matrix s0hat = dhat - s1hat;

    SplitPair out;
    out.s0 = svd.matrixU() * s0hat * svd.matrixV().transpose();
    out.s1 = svd.matrixU() * s1hat * svd.matrixV().transpose();
    return out;
}

CheckResult check_trace_bound(const Matrix& theta_hat, const Matrix& theta)
{
    detail::require_same_shape(theta_hat, theta, "check_trace_bound");
    const Matrix delta = theta_hat - theta;
    SplitPair split = decompose_s0_s1(theta, delta);
    CheckResult res;
    res.lhs = trace_norm(delta) + trace_norm(theta) - trace_norm(theta_hat);
    res.rhs = 2.0 * trace_norm(split.s0);
    res.holds = res.lhs <= res.rhs + 1e-9;
    return res;
}

Matrix restrict_to_support(const Matrix& m, const Matrix& support_of)
{
    detail::require_same_shape(m, support_of, "restrict_to_support");
    return (support_of.array().abs() > kSupportTol).select(m, Matrix::Zero(m.rows(), m.cols()));
}

CheckResult check_l1_bound(const Matrix& theta_hat, const Matrix& theta)
{
    detail::require_same_shape(theta_hat, theta, "check_l1_bound");
    const Matrix delta = theta_hat - theta;
    CheckResult res;
    res.lhs = l1_norm(delta) + l1_norm(theta) - l1_norm(theta_hat);
    res.rhs = 2.0 * l1_norm(restrict_to_support(delta, theta));
    res.holds = res.lhs <= res.rhs + 1e-12;
    return res;
}

double lemma_reg_sum(const Matrix& gx, Index k, double sigma_w, double t)
{
    const double n = static_cast<double>(gx.rows());
    const double big_n = n * static_cast<double>(k);
    const double sigma_xl = operator_norm(gx);
    return 2.0 * sigma_xl * sigma_w * std::sqrt(n)
           * (1.0 + std::sqrt(static_cast<double>(k) / n) + t) / big_n;
}

ConcentrationResult concentration_mc(const Matrix& gx, Index k, double sigma_w,
                                     double t, int trials, std::uint64_t seed)
{
    if (trials < 1000) throw DataError("concentration check needs at least 1000 trials");
    if (!(t > 0.0)) throw DataError("t must be positive");
    if (!(sigma_w >= 0.0)) throw DataError("sigma_w must be nonnegative");
    if (k < 1) throw DataError("k must be at least 1");

    const Index n = gx.rows();
    const double big_n = static_cast<double>(n) * static_cast<double>(k);

    ConcentrationResult res;
    res.lambda = lemma_reg_sum(gx, k, sigma_w, t);
    res.bound = 1.0 - std::exp(-static_cast<double>(n) * t * t / 2.0);

    int hits = 0;
    Matrix w(n, k);
    for (int trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(trial));
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < k; ++j) w(i, j) = sigma_w * gauss(rng);
        const double stat = operator_norm(w.transpose() * gx) / big_n;
        if (stat <= res.lambda / 2.0) ++hits;
    }
    res.empirical_prob = static_cast<double>(hits) / static_cast<double>(trials);
    return res;
}

CheckResult check_lemma1(const ProblemInstance& p, const Matrix& theta_hat,
                         const Matrix& theta, const RegPair& reg, const Matrix& f_true)
{
    detail::require_same_shape(theta_hat, theta, "check_lemma1");
    if (f_true.rows() != p.n || f_true.cols() != p.k)
        throw DimensionError("f_true dimensions do not match the instance");

    const double big_n = static_cast<double>(p.big_n);
    const Matrix delta = theta_hat - theta;
    SplitPair split = decompose_s0_s1(theta, delta);

    CheckResult res;
    res.lhs = (p.gx * theta_hat - f_true).squaredNorm() / big_n;
    res.rhs = (p.gx * theta - f_true).squaredNorm() / big_n
              + 2.0 * reg.alpha * trace_norm(split.s0)
              + 2.0 * reg.beta * l1_norm(restrict_to_support(delta, theta));
    res.holds = res.lhs <= res.rhs + 1e-5 * (1.0 + std::abs(res.rhs));
    return res;
}

}  // namespace stn
