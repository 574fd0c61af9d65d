#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// The h x k coefficient matrix being estimated. Rows index basis
// functions, columns index tasks.
using CoefficientMatrix = Matrix;

// Error taxonomy; the CLI maps these onto exit codes (data = 3, numerical = 4).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class DataError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

// Fixed-design regression instance: gx holds the basis evaluations (one
// row per sample, one column per basis function), y the responses (one
// column per task). Dense, column-major in memory; immutable once built.
struct ProblemInstance {
    Matrix gx;        // n x h
    Matrix y;         // n x k
    Index n = 0;
    Index h = 0;
    Index k = 0;
    Index big_n = 0;  // n * k, cached for the 1/N scalings in hot loops

    ProblemInstance() = default;
    ProblemInstance(Matrix gx_in, Matrix y_in)
        : gx(std::move(gx_in)), y(std::move(y_in))
    {
        n = gx.rows();
        h = gx.cols();
        k = y.cols();
        big_n = n * k;
    }
};

// Returns the instance iff all invariants hold: matching row counts,
// n >= 1, h >= 2, k >= 2, finite entries. Idempotent.
ProblemInstance validate_instance(ProblemInstance p);

// Regularization weights of the composite penalty
// alpha * ||Theta||_* + beta * ||Theta||_1.
struct RegPair {
    double alpha = 0.0;
    double beta = 0.0;
};

struct SolverConfig {
    double obj_tol = 1e-8;       // stop when |f_k - f_{k-1}| < obj_tol
    int max_iter = 100000;
    double gamma_init = 0.0;     // <= 0 selects the curvature-based default
    double gamma_growth = 2.0;   // line-search increment factor, > 1
    double inner_tol = 1e-10;    // dual CD stopping threshold
    int inner_max_iter = 50;     // dual CD sweep cap
    double rho1 = 10.0;          // ADMM penalty parameters
    double rho2 = 10.0;
    bool relative_obj_tol = false;     // obj_tol relative to max(1, |f|)
    bool admm_objective_only = false;  // drop the ADMM primal-residual guard

    // When finite, stop as soon as the objective reaches this value
    // (used by the bench protocol that races AG against ADMM2).
    double stop_at_objective = std::numeric_limits<double>::quiet_NaN();
};

void validate_config(const SolverConfig& cfg);

struct TracePoint {
    int iter = 0;
    double objective = 0.0;
    double seconds = 0.0;
};

struct SolverResult {
    CoefficientMatrix theta;
    double objective = 0.0;
    int iterations = 0;
    std::vector<TracePoint> trace;
    bool converged = false;
    std::vector<std::string> warnings;
};

}  // namespace stn
