#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "stn/ag.hpp"
#include "stn/data_io.hpp"
#include "stn/objective.hpp"
#include "stn/theory.hpp"

using namespace stn;

namespace {

Index numerical_rank(const Matrix& m)
{
    const Vector s = Eigen::JacobiSVD<Matrix>(m).singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    Index r = 0;
    while (r < s.size() && s(r) > 1e-9 * s(0)) ++r;
    return r;
}

void check_split_guarantees(const Matrix& theta, const Matrix& delta, Index rank_theta)
{
    const SplitPair split = decompose_s0_s1(theta, delta);
    CHECK((split.s0 + split.s1 - delta).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(numerical_rank(split.s0) <= 2 * rank_theta);
    CHECK((theta * split.s1.transpose()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((theta.transpose() * split.s1).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(trace_norm(theta + split.s1)
          == doctest::Approx(trace_norm(theta) + trace_norm(split.s1)).epsilon(1e-9));
}

}  // namespace

TEST_CASE("decompose_s0_s1 extreme ranks")
{
    oracle::Rng rng(3);
    const Matrix delta = rng.gaussian(6, 5);

    SUBCASE("rank zero: everything lands in s1")
    {
        const SplitPair split = decompose_s0_s1(Matrix::Zero(6, 5), delta);
        CHECK(split.s0.cwiseAbs().maxCoeff() < 1e-12);
        CHECK((split.s1 - delta).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("full rank: everything lands in s0")
    {
        const Matrix theta = rng.gaussian(6, 5);  // full rank a.s.
        const SplitPair split = decompose_s0_s1(theta, delta);
        CHECK(split.s1.cwiseAbs().maxCoeff() < 1e-12);
        CHECK((split.s0 - delta).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("decompose_s0_s1 guarantees on a rank-2 pair")
{
    oracle::Rng rng(5);
    const Matrix theta = rng.gaussian(6, 2) * rng.gaussian(5, 2).transpose();
    const Matrix delta = rng.gaussian(6, 5);
    check_split_guarantees(theta, delta, 2);
}

TEST_CASE("decompose_s0_s1 guarantees over random ranks")
{
    oracle::Rng rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        const Index h = 3 + trial % 6, k = 2 + trial % 5;
        const Index r = trial % (std::min(h, k) + 1);
        const Matrix theta =
            r > 0 ? Matrix(rng.gaussian(h, r) * rng.gaussian(k, r).transpose())
                  : Matrix(Matrix::Zero(h, k));
        check_split_guarantees(theta, rng.gaussian(h, k), r);
    }
}

TEST_CASE("trace bound hand cases")
{
    oracle::Rng rng(11);
    const Matrix theta = rng.gaussian(5, 4);

    const CheckResult same = check_trace_bound(theta, theta);
    CHECK(same.lhs == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(same.holds);

    const CheckResult zero = check_trace_bound(theta, Matrix::Zero(5, 4));
    CHECK(zero.lhs == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(zero.rhs == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(zero.holds);
}

TEST_CASE("trace bound holds on random pairs")
{
    oracle::Rng rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const Index h = 2 + trial % 7, k = 2 + trial % 5;
        const Index r = trial % (std::min(h, k) + 1);
        const Matrix theta =
            r > 0 ? Matrix(rng.gaussian(h, r) * rng.gaussian(k, r).transpose())
                  : Matrix(Matrix::Zero(h, k));
        const Matrix theta_hat = theta + rng.gaussian(h, k);
        CHECK(check_trace_bound(theta_hat, theta).holds);
    }
}

TEST_CASE("l1 bound hand cases and random pairs")
{
    oracle::Rng rng(17);
    const Matrix theta = rng.sparse_low_rank(6, 5, 3, 0.3);

    CHECK(check_l1_bound(theta, theta).holds);
    const CheckResult zero = check_l1_bound(rng.gaussian(6, 5), Matrix::Zero(6, 5));
    CHECK(zero.lhs == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(zero.rhs == 0.0);
    CHECK(zero.holds);

    for (int trial = 0; trial < 100; ++trial) {
        const Matrix base = rng.sparse_low_rank(6, 5, 3, 0.3);
        const Matrix hat = base + rng.gaussian(6, 5);
        CHECK(check_l1_bound(hat, base).holds);
    }
}

TEST_CASE("restrict_to_support masks complements")
{
    Matrix support(2, 2), m(2, 2);
    support << 1.0, 0.0, 1e-15, -2.0;
    m << 5.0, 6.0, 7.0, 8.0;
    const Matrix r = restrict_to_support(m, support);
    CHECK(r(0, 0) == 5.0);
    CHECK(r(0, 1) == 0.0);
    CHECK(r(1, 0) == 0.0);  // below the support tolerance
    CHECK(r(1, 1) == 8.0);
}

TEST_CASE("lemma_reg_sum matches the hand formula")
{
    oracle::Rng rng(19);
    const Matrix gx = rng.gaussian(40, 10);
    const Index k = 6;
    const double sigma_w = 0.7, t = 0.5;
    const double n = 40.0, big_n = n * 6.0;
    const double expect = 2.0 * oracle::opnorm(gx) * sigma_w * std::sqrt(n)
                          * (1.0 + std::sqrt(6.0 / n) + t) / big_n;
    CHECK(lemma_reg_sum(gx, k, sigma_w, t) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("concentration_mc edge cases")
{
    oracle::Rng rng(23);
    const Matrix gx = rng.gaussian(50, 10);

    SUBCASE("zero noise is always inside")
    {
        const ConcentrationResult r = concentration_mc(gx, 4, 0.0, 0.5, 1000, 1);
        CHECK(r.empirical_prob == 1.0);
    }
    SUBCASE("huge t makes both sides one")
    {
        const ConcentrationResult r = concentration_mc(gx, 4, 1.0, 10.0, 1000, 1);
        CHECK(r.empirical_prob == 1.0);
        CHECK(r.bound == doctest::Approx(1.0));
    }
    SUBCASE("trial count is validated")
    {
        CHECK_THROWS_AS(concentration_mc(gx, 4, 1.0, 0.5, 999, 1), DataError);
    }
    SUBCASE("deterministic under seed")
    {
        const ConcentrationResult a = concentration_mc(gx, 4, 1.0, 0.2, 1000, 5);
        const ConcentrationResult b = concentration_mc(gx, 4, 1.0, 0.2, 1000, 5);
        CHECK(a.empirical_prob == b.empirical_prob);
    }
}

TEST_CASE("concentration_mc beats its analytic bound")
{
    oracle::Rng rng(29);
    const Matrix gx = rng.gaussian(60, 15);
    const int trials = 1000;
    const ConcentrationResult r = concentration_mc(gx, 8, 1.0, 0.4, trials, 11);
    CHECK(r.empirical_prob >= r.bound - 2.0 / std::sqrt(static_cast<double>(trials)));
}

TEST_CASE("lemma1 check trivial cases")
{
    oracle::Rng rng(31);
    ProblemInstance p(rng.gaussian(12, 5), rng.gaussian(12, 3));
    const Matrix f_true = rng.gaussian(12, 3);
    const Matrix theta = rng.gaussian(5, 3);

    SUBCASE("identical matrices")
    {
        const CheckResult r = check_lemma1(p, theta, theta, {0.1, 0.1}, f_true);
        CHECK(r.lhs == doctest::Approx(r.rhs));
        CHECK(r.holds);
    }
    SUBCASE("unregularized least squares is projection-optimal")
    {
        const Matrix ls = p.gx.colPivHouseholderQr().solve(p.y);
        // against the truth f = y the fitted value minimizes the first term
        const CheckResult r = check_lemma1(p, ls, theta, {0.0, 0.0}, p.y);
        CHECK(r.holds);
    }
}

TEST_CASE("lemma1 holds on solver output across noise seeds")
{
    const Index n = 60, h = 20, k = 8;
    int held = 0;
    const int seeds = 8;
    for (int seed = 0; seed < seeds; ++seed) {
        auto [p, truth] = generate_synthetic(n, h, k, 3, 0.2, 0.5,
                                             1000 + static_cast<std::uint64_t>(seed));
        const double lambda = lemma_reg_sum(p.gx, k, truth.sigma_w, 1.0);
        const RegPair reg{lambda / 2.0, lambda / 2.0};
        SolverConfig cfg;
        cfg.obj_tol = 1e-10;
        const SolverResult sol = ag_solve(p, reg, cfg);
        if (check_lemma1(p, sol.theta, truth.theta_star, reg, truth.f_true).holds)
            ++held;
    }
    // the failure probability is exp(-n/2) ~ 1e-13 per seed
    CHECK(held == seeds);
}
