#pragma once

#include <Eigen/Dense>

#include "stn/types.hpp"

namespace stn::detail {

struct ThinSvd {
    Matrix u;      // m x r
    Vector sigma;  // r, nonincreasing
    Matrix v;      // n x r
};

// Reduced SVD with r = min(rows, cols). Bidiagonal divide-and-conquer
// above Eigen's internal crossover, Jacobi below it.
inline ThinSvd thin_svd(const Matrix& m)
{
    if (m.rows() >= 16 && m.cols() >= 16) {
        Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
        if (svd.info() != Eigen::Success)
            throw NumericalError("SVD did not converge");
        return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
    }
    Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        throw NumericalError("SVD did not converge");
    return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

inline Vector singular_values(const Matrix& m)
{
    if (m.rows() >= 16 && m.cols() >= 16) {
        Eigen::BDCSVD<Matrix> svd(m);
        if (svd.info() != Eigen::Success)
            throw NumericalError("SVD did not converge");
        return svd.singularValues();
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    if (svd.info() != Eigen::Success)
        throw NumericalError("SVD did not converge");
    return svd.singularValues();
}

inline void require_same_shape(const Matrix& a, const Matrix& b, const char* what)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError(std::string(what) + ": shapes do not match");
}

}  // namespace stn::detail
