#pragma once

#include <Eigen/Dense>

#include <chrono>
#include <cmath>

#include "stn/objective.hpp"
#include "stn/types.hpp"

namespace stn::detail {

// Precomputed least-squares pieces shared by the solvers. Evaluating the
// loss through the Gram matrix costs O(h^2 k) per call instead of O(n h k).
struct LsContext {
    const ProblemInstance* p = nullptr;
    Matrix gtg;                // h x h
    Matrix gty;                // h x k
    double y_sq = 0.0;         // ||y||_F^2
    double inv_bn = 0.0;       // 1 / N
    double sigma_max_sq = 0.0; // largest eigenvalue of gtg

    explicit LsContext(const ProblemInstance& inst) : p(&inst)
    {
        gtg = inst.gx.transpose() * inst.gx;
        gty = inst.gx.transpose() * inst.y;
        y_sq = inst.y.squaredNorm();
        inv_bn = 1.0 / static_cast<double>(inst.big_n);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(gtg, Eigen::EigenvaluesOnly);
        sigma_max_sq = eig.eigenvalues().size() > 0
                           ? std::max(0.0, eig.eigenvalues().maxCoeff())
                           : 0.0;
    }

    double loss(const Matrix& theta) const
    {
        double v = (theta.transpose() * (gtg * theta)).trace()
                   - 2.0 * (theta.array() * gty.array()).sum() + y_sq;
        return std::max(0.0, v) * inv_bn;
    }

    Matrix grad(const Matrix& theta) const
    {
        return (2.0 * inv_bn) * (gtg * theta - gty);
    }

    double lipschitz() const { return 2.0 * sigma_max_sq * inv_bn; }

    double objective(const Matrix& theta, const RegPair& reg) const
    {
        double v = loss(theta);
        if (reg.alpha != 0.0) v += reg.alpha * trace_norm(theta);
        if (reg.beta != 0.0) v += reg.beta * l1_norm(theta);
        return v;
    }
};

inline void require_reg(const RegPair& reg)
{
    if (!(reg.alpha >= 0.0) || !(reg.beta >= 0.0))
        throw DataError("regularization weights must be nonnegative");
    if (std::isinf(reg.alpha) && std::isinf(reg.beta))
        throw DataError("regularization weights cannot both be infinite");
}

class WallClock {
public:
    WallClock() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace stn::detail
