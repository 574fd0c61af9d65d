// Test-only reference implementations. Everything here is deliberately
// independent of the library's solver paths: SVD-based pieces call Eigen
// directly, scalar problems are solved by interval refinement, and the
// composite prox is reproduced by Douglas-Rachford splitting.
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "stn/types.hpp"

namespace oracle {

using stn::Index;
using stn::Matrix;
using stn::Vector;

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    Matrix gaussian(Index rows, Index cols, double sigma = 1.0)
    {
        std::normal_distribution<double> dist(0.0, sigma);
        Matrix m(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j) m(i, j) = dist(gen_);
        return m;
    }

    Matrix uniform(Index rows, Index cols, double lo, double hi)
    {
        std::uniform_real_distribution<double> dist(lo, hi);
        Matrix m(rows, cols);
        for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j) m(i, j) = dist(gen_);
        return m;
    }

    double uniform(double lo, double hi)
    {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }

    // Rank-bounded product with an exact-size random support mask.
    Matrix sparse_low_rank(Index h, Index k, Index rank, double support_frac)
    {
        Matrix m = rank > 0 ? Matrix(gaussian(h, rank) * gaussian(k, rank).transpose())
                            : Matrix(Matrix::Zero(h, k));
        if (support_frac < 1.0) {
            const auto keep = static_cast<Index>(
                std::ceil(support_frac * static_cast<double>(h * k)));
            std::vector<Index> order(static_cast<std::size_t>(h * k));
            std::iota(order.begin(), order.end(), Index{0});
            std::shuffle(order.begin(), order.end(), gen_);
            for (Index t = keep; t < h * k; ++t)
                m(order[static_cast<std::size_t>(t)] / k,
                  order[static_cast<std::size_t>(t)] % k) = 0.0;
        }
        return m;
    }

    std::mt19937_64& raw() { return gen_; }

private:
    std::mt19937_64 gen_;
};

// ---- independent norm and threshold primitives -------------------------

inline double tracenorm_via_eigensolver(const Matrix& m)
{
    // Sum of sqrt eigenvalues of the Gram matrix; no SVD involved.
    const Matrix gram = m.transpose() * m;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram, Eigen::EigenvaluesOnly);
    double sum = 0.0;
    for (Index i = 0; i < eig.eigenvalues().size(); ++i)
        sum += std::sqrt(std::max(0.0, eig.eigenvalues()(i)));
    return sum;
}

inline double opnorm(const Matrix& m)
{
    return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

inline Matrix svt_ref(const Matrix& m, double tau)
{
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Vector s = svd.singularValues();
    for (Index i = 0; i < s.size(); ++i) s(i) = std::max(0.0, s(i) - tau);
    return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

inline Matrix soft_ref(const Matrix& m, double tau)
{
    Matrix out = m;
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) {
            const double v = m(i, j);
            out(i, j) = std::abs(v) > tau ? v - (v > 0 ? tau : -tau) : 0.0;
        }
    return out;
}

// Minimize a convex scalar function on [lo, hi] by ternary refinement.
template <typename F>
double minimize_scalar(F f, double lo, double hi, int iters = 200)
{
    for (int t = 0; t < iters; ++t) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (f(m1) <= f(m2)) hi = m2;
        else lo = m1;
    }
    return 0.5 * (lo + hi);
}

// Per-entry solution of min_x 0.5 (x - v)^2 + tau |x| via grid refinement.
inline double scalar_soft_prox(double v, double tau)
{
    auto f = [&](double x) { return 0.5 * (x - v) * (x - v) + tau * std::abs(x); };
    const double radius = std::abs(v) + tau + 1.0;
    return minimize_scalar(f, -radius, radius);
}

// Per-entry solution of min_s (s - v)^2 on [-1, 1] via grid refinement.
inline double scalar_box_projection(double v)
{
    auto f = [&](double s) { return (s - v) * (s - v); };
    return minimize_scalar(f, -1.0, 1.0);
}

// ---- spectral ball projection oracle ------------------------------------

// Feasibility projection used inside the oracle: the Moreau identity
// proj(x) = x - prox_tracenorm(x) with the prox built from svt_ref above.
// This is a different route than the library's direct clipping.
inline Matrix project_spectral_moreau(const Matrix& m)
{
    return m - svt_ref(m, 1.0);
}

// Projected subgradient descent on ||l - m||_F^2 over the unit spectral
// ball (constant step 1/2, the inverse curvature). Early exit on a fixed
// point well below the comparison tolerance.
inline Matrix project_spectral_subgrad(const Matrix& m, int iters = 10000)
{
    Matrix l = Matrix::Zero(m.rows(), m.cols());
    for (int t = 0; t < iters; ++t) {
        Matrix next = project_spectral_moreau(l - 0.5 * (2.0 * (l - m)));
        if ((next - l).norm() <= 1e-14 * (1.0 + l.norm())) return next;
        l = std::move(next);
    }
    return l;
}

// Optimality certificate for p = proj of m onto the unit spectral ball:
// feasibility plus the support-function gap ||m - p||_* - <m - p, p>,
// which bounds ||p - p*||_F^2 for the true projection p*.
inline double spectral_projection_gap(const Matrix& m, const Matrix& p)
{
    const Matrix r = m - p;
    return tracenorm_via_eigensolver(r) - (r.array() * p.array()).sum();
}

// ---- composite prox oracle (Douglas-Rachford) ----------------------------

// Minimizes ||x - phi||_F^2 + ahat ||x||_* + bhat ||x||_1 by splitting
// f(x) = ||x - phi||_F^2 + ahat ||x||_* (prox via a shifted svt) and
// g(x) = bhat ||x||_1. Step t > 0 arbitrary; 0.5 works well here.
inline Matrix dr_prox_oracle(const Matrix& phi, double ahat, double bhat,
                             int iters = 100000)
{
    const double t = 0.5;
    auto prox_f = [&](const Matrix& v) {
        return svt_ref((2.0 * t * phi + v) / (2.0 * t + 1.0),
                       t * ahat / (2.0 * t + 1.0));
    };
    auto prox_g = [&](const Matrix& v) { return soft_ref(v, t * bhat); };

    Matrix z = phi;
    Matrix x = prox_f(z);
    for (int it = 0; it < iters; ++it) {
        Matrix y = prox_g(2.0 * x - z);
        const double gap = (y - x).norm();
        z += y - x;
        x = prox_f(z);
        if (gap <= 1e-15 * (1.0 + x.norm())) break;
    }
    return x;
}

inline double prox_objective(const Matrix& theta, const Matrix& phi, double ahat,
                             double bhat)
{
    return (theta - phi).squaredNorm() + ahat * tracenorm_via_eigensolver(theta)
           + bhat * theta.cwiseAbs().sum();
}

// ---- joint dual oracle ----------------------------------------------------

// Projected gradient descent on ||a L + b S - 2 phi||_F^2 over the product
// of the two unit balls, with Nesterov momentum and a feasibility projection
// after the extrapolation. Returns the attained dual objective.
inline double joint_dual_pgd(const Matrix& phi, double ahat, double bhat,
                             int iters = 20000)
{
    const double lip = 2.0 * (ahat * ahat + bhat * bhat);
    const double step = 1.0 / lip;
    const Matrix target = 2.0 * phi;

    Matrix l = Matrix::Zero(phi.rows(), phi.cols());
    Matrix s = l;
    Matrix yl = l, ys = s;
    double t_mom = 1.0;

    auto objective = [&](const Matrix& la, const Matrix& sa) {
        return (ahat * la + bhat * sa - target).squaredNorm();
    };

    double best = objective(l, s);
    for (int it = 0; it < iters; ++it) {
        const Matrix resid = ahat * yl + bhat * ys - target;
        Matrix l_next = project_spectral_moreau(yl - step * 2.0 * ahat * resid);
        Matrix s_next = (ys - step * 2.0 * bhat * resid).cwiseMax(-1.0).cwiseMin(1.0);

        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_mom * t_mom));
        const double coeff = (t_mom - 1.0) / t_next;
        yl = l_next + coeff * (l_next - l);
        ys = s_next + coeff * (s_next - s);
        t_mom = t_next;

        l = std::move(l_next);
        s = std::move(s_next);
        best = std::min(best, objective(l, s));
    }
    return best;
}

// ---- metric oracles -------------------------------------------------------

// All-pairs AUC for one column: wins + half ties over positive-negative pairs.
inline double auc_all_pairs(const Matrix& scores, const Matrix& labels, Index col)
{
    double wins = 0.0;
    long pairs = 0;
    for (Index i = 0; i < scores.rows(); ++i) {
        if (labels(i, col) <= 0) continue;
        for (Index j = 0; j < scores.rows(); ++j) {
            if (labels(j, col) > 0) continue;
            ++pairs;
            if (scores(i, col) > scores(j, col)) wins += 1.0;
            else if (scores(i, col) == scores(j, col)) wins += 0.5;
        }
    }
    return wins / static_cast<double>(pairs);
}

// ---- misc -----------------------------------------------------------------

// Membership test for g in the trace-norm subdifferential at theta:
// g = u1 v1' + w with u1' w = 0, w v1 = 0, ||w||_2 <= 1.
inline double tracenorm_subdiff_violation(const Matrix& theta, const Matrix& g)
{
    Eigen::JacobiSVD<Matrix> svd(theta, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sigma = svd.singularValues();
    const double cutoff = sigma.size() > 0 ? 1e-12 * sigma(0) : 0.0;
    Index r = 0;
    while (r < sigma.size() && sigma(r) > cutoff && sigma(r) > 0.0) ++r;

    if (r == 0) return std::max(0.0, opnorm(g) - 1.0);

    const Matrix u1 = svd.matrixU().leftCols(r);
    const Matrix v1 = svd.matrixV().leftCols(r);
    const Matrix w = g - u1 * v1.transpose();
    double violation = std::max((u1.transpose() * w).cwiseAbs().maxCoeff(),
                                (w * v1).cwiseAbs().maxCoeff());
    violation = std::max(violation, opnorm(w) - 1.0);
    return std::max(0.0, violation);
}

}  // namespace oracle
