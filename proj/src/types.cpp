#include "stn/types.hpp"

#include <cmath>
#include <sstream>

namespace stn {

namespace {

// First non-finite coordinate of m, or (-1, -1) if all entries are finite.
std::pair<Index, Index> first_nonfinite(const Matrix& m)
{
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j))) return {i, j};
    return {-1, -1};
}

}  // namespace

ProblemInstance validate_instance(ProblemInstance p)
{
    if (p.gx.rows() != p.y.rows()) {
        std::ostringstream msg;
        msg << "y has " << p.y.rows() << " rows but gx has " << p.gx.rows();
        throw DimensionError(msg.str());
    }
    if (p.n < 1) throw DimensionError("gx must have at least one row");
    if (p.h < 2) throw DimensionError("gx must have at least two columns (h >= 2)");
    if (p.k < 2) throw DimensionError("y must have at least two columns (k >= 2)");
    if (p.big_n != p.n * p.k) throw DimensionError("big_n does not equal n * k");

    if (auto [i, j] = first_nonfinite(p.gx); i >= 0) {
        std::ostringstream msg;
        msg << "gx has a non-finite entry at (" << i << ", " << j << ")";
        throw DataError(msg.str());
    }
    if (auto [i, j] = first_nonfinite(p.y); i >= 0) {
        std::ostringstream msg;
        msg << "y has a non-finite entry at (" << i << ", " << j << ")";
        throw DataError(msg.str());
    }
    return p;
}

void validate_config(const SolverConfig& cfg)
{
    if (cfg.obj_tol <= 0) throw DataError("obj_tol must be positive");
    if (cfg.max_iter < 1) throw DataError("max_iter must be at least 1");
    if (cfg.gamma_growth <= 1.0) throw DataError("gamma_growth must exceed 1");
    if (cfg.inner_tol <= 0) throw DataError("inner_tol must be positive");
    if (cfg.inner_max_iter < 1) throw DataError("inner_max_iter must be at least 1");
    if (cfg.rho1 <= 0 || cfg.rho2 <= 0) throw DataError("ADMM penalties must be positive");
}

}  // namespace stn
