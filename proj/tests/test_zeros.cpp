#include <susyzeta/zeros.hpp>

#include "oracle/zeta_oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace susyzeta;

namespace {

// Oracle zeros in [10, 60], computed once.
const std::vector<double>& oracle_zeros()
{
    static const std::vector<double> z = oracle::zeros_between(10.0, 60.0);
    return z;
}

ZeroSearchConfig range(double lo, double hi)
{
    ZeroSearchConfig cfg;
    cfg.lambda_min = lo;
    cfg.lambda_max = hi;
    return cfg;
}

} // namespace

TEST(ZeroSearchConfig, Validation)
{
    EXPECT_NO_THROW(ZeroSearchConfig{}.validate());
    EXPECT_THROW(range(5.0, 1.0).validate(), ConfigError);
    EXPECT_NO_THROW(range(3.0, 3.0).validate());
    ZeroSearchConfig cfg;
    cfg.scan_step = 0.0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = {};
    cfg.residual_threshold = -1.0;
    EXPECT_THROW(cfg.validate(), ConfigError);
    cfg = {};
    cfg.lambda_max = INFINITY;
    EXPECT_THROW(cfg.validate(), ConfigError);
}

TEST(ScanZeroCandidates, FirstThreeZeros)
{
    ZeroSearchConfig cfg = range(10.0, 30.0);
    cfg.scan_step = 0.1;
    const auto brackets = scan_zero_candidates(cfg);
    ASSERT_EQ(brackets.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_LT(brackets[k].lo, oracle_zeros()[k]);
        EXPECT_GT(brackets[k].hi, oracle_zeros()[k]);
    }
}

TEST(ScanZeroCandidates, NoneBelowFirstZero)
{
    EXPECT_TRUE(scan_zero_candidates(range(0.0, 10.0)).empty());
    EXPECT_TRUE(scan_zero_candidates(range(20.0, 20.0)).empty());
}

TEST(ScanZeroCandidates, ThreadCountDoesNotChangeResult)
{
    const auto a = scan_zero_candidates(range(10.0, 60.0), 1);
    const auto b = scan_zero_candidates(range(10.0, 60.0), 4);
    EXPECT_EQ(a, b);
}

TEST(RefineZero, FirstTwoZeros)
{
    const ZeroSearchConfig cfg;
    const ZeroRecord a = refine_zero({14.0, 14.3}, cfg);
    EXPECT_NEAR(a.lambda_star, oracle_zeros()[0], 1e-6);
    EXPECT_LE(a.zeta_residual, cfg.residual_threshold);
    EXPECT_LT(a.bracket.lo, a.lambda_star);
    EXPECT_GT(a.bracket.hi, a.lambda_star);
    const ZeroRecord b = refine_zero({20.9, 21.1}, cfg);
    EXPECT_NEAR(b.lambda_star, oracle_zeros()[1], 1e-6);
}

TEST(RefineZero, RejectsNonVanishingDip)
{
    // No zero between the first two; the minimum of |zeta| there is far from 0.
    const ZeroSearchConfig cfg;
    try {
        refine_zero({17.0, 18.5}, cfg);
        FAIL() << "expected NotAZero";
    } catch (const NotAZero& e) {
        EXPECT_GT(e.residual, cfg.residual_threshold);
        EXPECT_GE(e.lambda, 17.0);
        EXPECT_LE(e.lambda, 18.5);
    }
}

TEST(RefineZero, RejectsEmptyBracket)
{
    EXPECT_THROW(refine_zero({14.2, 14.1}, ZeroSearchConfig{}), ConfigError);
}

TEST(LocateZeros, CountMatchesOracle)
{
    const ZeroSearchResult r = locate_zeros(range(10.0, 50.0));
    std::size_t expected = 0;
    for (double z : oracle_zeros()) {
        expected += z <= 50.0 ? 1 : 0;
    }
    EXPECT_EQ(expected, 10u);
    ASSERT_EQ(r.zeros.size(), expected);
    EXPECT_TRUE(r.rejections.empty());
    for (std::size_t k = 0; k < r.zeros.size(); ++k) {
        EXPECT_NEAR(r.zeros[k].lambda_star, oracle_zeros()[k], 1e-6);
        EXPECT_LE(r.zeros[k].zeta_residual, 1e-6);
        EXPECT_LE(r.zeros[k].hamiltonian_residual, 1e-10);
        if (k > 0) {
            EXPECT_LT(r.zeros[k - 1].lambda_star, r.zeros[k].lambda_star);
        }
    }
}

TEST(LocateZeros, DeterministicAcrossThreadCounts)
{
    const auto a = locate_zeros(range(10.0, 60.0), 1);
    const auto b = locate_zeros(range(10.0, 60.0), 3);
    EXPECT_EQ(a.zeros, b.zeros);
}

TEST(LocateZeros, TightThresholdRejects)
{
    ZeroSearchConfig cfg = range(10.0, 30.0);
    cfg.residual_threshold = 1e-30;
    const ZeroSearchResult r = locate_zeros(cfg);
    EXPECT_TRUE(r.zeros.empty());
    EXPECT_EQ(r.rejections.size(), 3u);
}

TEST(VerifyZeroMode, Om2AtFirstZero)
{
    const ZeroRecord z = refine_zero({14.0, 14.3}, ZeroSearchConfig{});
    const Decomposition d = decompose(z.lambda_star, 0.0, 0.0, Branch::minus);
    const ZeroModeReport r = verify_zero_mode(z, ModelKind::OM2, 1e-6, {d});
    ASSERT_EQ(r.entries.size(), 1u);
    EXPECT_LE(r.max_residual, 1e-10);
    EXPECT_EQ(r.threshold, 1e-12);
    EXPECT_TRUE(r.passed);
}

TEST(VerifyZeroMode, MuInvariance)
{
    const ZeroRecord z = refine_zero({14.0, 14.3}, ZeroSearchConfig{});
    // Dyadic lambda, rho0 and omega keep rho - rho0 +- omega/2 exact.
    ZeroRecord dyadic = z;
    dyadic.lambda_star = std::ldexp(std::round(std::ldexp(z.lambda_star, 40)), -40);
    const std::vector<Decomposition> ds{decompose(dyadic.lambda_star, 1.0, 0.0, Branch::minus),
                                        decompose(dyadic.lambda_star, 1.0, 2.0, Branch::plus),
                                        decompose(dyadic.lambda_star, -3.5, 6.0, Branch::minus)};
    EXPECT_EQ(ds[0].rho, dyadic.lambda_star + 1.0);
    const ZeroModeReport r = verify_zero_mode(dyadic, ModelKind::OM2, 1e-6, ds);
    for (const ZeroModeEntry& e : r.entries) {
        EXPECT_EQ(e.residual, r.entries.front().residual);
    }
}

TEST(VerifyZeroMode, Om1AndDk)
{
    const ZeroRecord z = refine_zero({20.9, 21.1}, ZeroSearchConfig{});
    const ZeroModeReport om1 = verify_zero_mode(z, ModelKind::OM1);
    EXPECT_TRUE(om1.passed) << om1.max_residual;
    EXPECT_EQ(om1.entries.size(), default_decompositions(z.lambda_star).size());
    const ZeroModeReport dk = verify_zero_mode(z, ModelKind::DK);
    EXPECT_TRUE(dk.passed);
    for (const ZeroModeEntry& e : dk.entries) {
        EXPECT_EQ(e.decomposition.rho0, 0.0);
    }
    EXPECT_FALSE(dk.entries.empty());
}

TEST(VerifyZeroMode, FailsAwayFromZero)
{
    ZeroRecord z = refine_zero({14.0, 14.3}, ZeroSearchConfig{});
    z.lambda_star += 0.01;
    EXPECT_FALSE(verify_zero_mode(z, ModelKind::OM2).passed);
}

TEST(Decompose, SatisfiesShift)
{
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int k = 0; k < 20; ++k) {
        const double mu = 30.0 + u(rng);
        for (Branch b : {Branch::minus, Branch::plus}) {
            const Decomposition d = decompose(mu, u(rng), u(rng), b);
            EXPECT_NEAR(critical_shift(d.rho, d.rho0, d.omega, d.branch), mu, 1e-13);
        }
    }
}
