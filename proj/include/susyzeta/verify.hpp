#ifndef SUSYZETA_VERIFY_HPP
#define SUSYZETA_VERIFY_HPP

// Self-check suites run by the `verify` command: exact operator algebra, finite-difference
// intertwining and quadratic algebra, the confluent integral, and closed-form eigenvalues
// against term-by-term shift-series sums.

#include <susyzeta/euler_poly.hpp>
#include <susyzeta/grid_lab.hpp>
#include <susyzeta/parallel.hpp>
#include <susyzeta/spectral.hpp>
#include <susyzeta/susy.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace susyzeta::verify {

struct Check {
    std::string suite;
    std::string name;
    double tolerance;
    double measured;
    bool passed;
};

inline const std::array<std::string, 5>& suite_names()
{
    static const std::array<std::string, 5> names{"factorization", "intertwining", "quadratic", "confluent",
                                                  "series"};
    return names;
}

struct Options {
    std::vector<std::string> suites; // empty: all
    std::uint64_t seed = 20240917;
    double perturb = 0.0;            // relative change of the H+ coupling in the intertwining suite
    std::size_t samples_algebra = 100;
    std::size_t samples_series = 50;
    grid::GridSpec<double> grid{0.5, 4.0, 4096, grid::Spacing::log_uniform};
    unsigned threads = 1;
};

// Bounds for the grid suites.
inline constexpr double second_order_composite_bound = 1e-6;
inline constexpr double fourth_order_composite_bound = 1e-4;
inline constexpr double expected_order = 2.0;
inline constexpr double order_slack = 0.3;
inline constexpr double integral_bound = 1e-8;
inline constexpr double series_bound = 1e-8;

namespace detail {

inline complex random_complex(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> u(lo, hi);
    const double re = u(rng);
    return {re, u(rng)};
}

inline double relative(const FactorizationCheck& c, const EulerPoly& lhs)
{
    double scale = 0.0;
    for (std::size_t j = 0; j <= EulerPoly::max_degree; ++j) {
        scale = std::max(scale, std::abs(lhs[j]));
    }
    return scale > 0.0 ? c.max_deviation / scale : c.max_deviation;
}

inline void factorization_suite(const Options& opt, std::vector<Check>& out)
{
    std::mt19937_64 rng(opt.seed);
    double worst_factor = 0.0;
    double worst_eigen = 0.0;
    double worst_algebra = 0.0;
    bool all_hold = true;
    for (std::size_t k = 0; k < opt.samples_algebra; ++k) {
        const complex s0 = random_complex(rng, -3.0, 3.0);
        const complex S = random_complex(rng, -3.0, 3.0);
        const FirstOrderTransform t1 = first_order_transform({s0});
        const ConfluentTransform t2 = confluent_transform({s0});

        const auto record = [&](const EulerPoly& lhs, std::initializer_list<EulerPoly> factors) {
            const FactorizationCheck c = verify_factorization(lhs, factors);
            all_hold = all_hold && c.holds;
            worst_factor = std::max(worst_factor, relative(c, lhs));
        };
        const auto record_ops = [&](const HomogeneousOp& lhs, const HomogeneousOp& rhs) {
            const FactorizationCheck c = verify_factorization(lhs.poly, {rhs.poly});
            all_hold = all_hold && c.holds && lhs.weight == rhs.weight;
            worst_factor = std::max(worst_factor, relative(c, lhs.poly));
        };

        // H1+ = L- L+, H1- = L+ L-, composed as first-order operators.
        record_ops(as_homogeneous(t1.h_plus()), compose(as_homogeneous(t1.l_minus), as_homogeneous(t1.l_plus)));
        record_ops(as_homogeneous(t1.h_minus()), compose(as_homogeneous(t1.l_plus), as_homogeneous(t1.l_minus)));
        // x^2 H1+ = (D + S0 - 1)(-D + S0), x^2 H1- = (-D + S0 + 1)(D + S0)
        record(rational_to_euler(t1.h_plus()), {EulerPoly::linear(1.0, s0 - 1.0), EulerPoly::linear(-1.0, s0)});
        record(rational_to_euler(t1.h_minus()), {EulerPoly::linear(-1.0, s0 + 1.0), EulerPoly::linear(1.0, s0)});
        // x^2 L2- = (D + S0)(D + S0 - 2), x^2 L2+ = (D - S0 - 1)(D - S0 + 1)
        record(rational_to_euler(t2.l2_minus), {EulerPoly::linear(1.0, s0), EulerPoly::linear(1.0, s0 - 2.0)});
        record(rational_to_euler(t2.l2_plus), {EulerPoly::linear(1.0, -s0 - 1.0), EulerPoly::linear(1.0, -s0 + 1.0)});

        // Eigenvalues of x^2 H1+- on x^(-S): (S0 +- S)(S0 -+ S -+ 1).
        const complex e_plus = euler_apply(rational_to_euler(t1.h_plus()), S);
        const complex e_minus = euler_apply(rational_to_euler(t1.h_minus()), S);
        const complex f_plus = (s0 + S) * (s0 - S - 1.0);
        const complex f_minus = (s0 - S) * (s0 + S + 1.0);
        worst_eigen = std::max({worst_eigen, std::abs(e_plus - f_plus) / std::max(1.0, std::abs(f_plus)),
                                std::abs(e_minus - f_minus) / std::max(1.0, std::abs(f_minus))});

        // H+ L- = L- H- and L2+ L2- = (H2-)^2 as exact operator identities.
        const auto rel_dev = [](const HomogeneousOp& a, const HomogeneousOp& b) {
            const FactorizationCheck c = verify_factorization(a.poly, {b.poly});
            return a.weight == b.weight ? relative(c, a.poly) : HUGE_VAL;
        };
        worst_algebra = std::max(
            {worst_algebra,
             rel_dev(compose(as_homogeneous(t1.h_plus()), as_homogeneous(t1.l_minus)),
                     compose(as_homogeneous(t1.l_minus), as_homogeneous(t1.h_minus()))),
             rel_dev(compose(as_homogeneous(t2.h_plus()), as_homogeneous(t2.l2_minus)),
                     compose(as_homogeneous(t2.l2_minus), as_homogeneous(t2.h_minus()))),
             rel_dev(compose(as_homogeneous(t2.l2_plus), as_homogeneous(t2.l2_minus)),
                     compose(as_homogeneous(t2.h_minus()), as_homogeneous(t2.h_minus())))});
    }
    out.push_back({"factorization", "factorizations (first-order, x^2 H1, x^2 L2)", exact_tolerance, worst_factor,
                   all_hold && worst_factor <= exact_tolerance});
    out.push_back({"factorization", "x^2 H1 eigenvalues on monomials", exact_tolerance, worst_eigen,
                   worst_eigen <= exact_tolerance});
    out.push_back({"factorization", "exact intertwining and quadratic algebra", exact_tolerance, worst_algebra,
                   worst_algebra <= exact_tolerance});
}

inline void grid_report(std::vector<Check>& out, const std::string& suite, const std::string& name,
                        const grid::ResidualReport<double>& r, double bound)
{
    out.push_back({suite, name + ": relative L2", bound, r.relative_l2, r.relative_l2 <= bound});
    const double dev = std::abs(r.convergence_order - expected_order);
    out.push_back({suite, name + ": |order - 2|", order_slack, dev, dev <= order_slack});
}

inline void intertwining_suite(const Options& opt, std::vector<Check>& out)
{
    const grid::IntertwiningOptions io{opt.perturb};
    grid_report(out, "intertwining", "first order, S0 = i, S = 1/2 - 3i",
                grid::intertwining_residual(complex{0.0, 1.0}, complex{0.5, -3.0}, grid::Order::first, opt.grid, io),
                second_order_composite_bound);
    grid_report(out, "intertwining", "confluent, S0 = i, S = 1/2 - 2i",
                grid::intertwining_residual(complex{0.0, 1.0}, complex{0.5, -2.0}, grid::Order::confluent, opt.grid,
                                            io),
                fourth_order_composite_bound);
}

inline void quadratic_suite(const Options& opt, std::vector<Check>& out)
{
    grid_report(out, "quadratic", "L2+ L2- = (H2-)^2, S0 = i, S = 1/2 - 2i",
                grid::quadratic_algebra_residual(complex{0.0, 1.0}, complex{0.5, -2.0}, opt.grid),
                fourth_order_composite_bound);
}

inline void confluent_suite(const Options& opt, std::vector<Check>& out)
{
    const auto r = grid::confluent_integral_check(complex{0.0, 1.0}, 1.0, opt.grid);
    out.push_back({"confluent", "w0 - int u^2 vs closed form, S0 = i", integral_bound, r.max_relative,
                   r.max_relative <= integral_bound});
    const double wmin = grid::confluent_w_min_modulus(complex{0.0, 1.0}, 1.0, opt.grid);
    out.push_back({"confluent", "min |w| over grid (nodeless)", 0.0, wmin, wmin > 0.0});
}

inline double rel_err(complex a, complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

inline void series_suite(const Options& opt, std::vector<Check>& out)
{
    std::mt19937_64 rng(opt.seed + 1);
    std::uniform_real_distribution<double> sig(0.05, 0.95), rho(-30.0, 30.0), rho0(-5.0, 5.0), om(-10.0, 10.0);
    struct Point {
        double sigma, rho, rho0, omega;
    };
    std::vector<Point> pts(opt.samples_series);
    for (Point& p : pts) {
        p.sigma = sig(rng);
        p.rho = rho(rng);
        p.rho0 = rho0(rng);
        p.omega = om(rng);
    }
    std::vector<double> worst(pts.size(), 0.0);
    parallel_for(pts.size(), opt.threads, [&](std::size_t i) {
        const Point& p = pts[i];
        const complex S{p.sigma, -p.rho};
        const complex s0{0.0, p.rho0};
        double w = 0.0;
        for (Branch b : {Branch::minus, Branch::plus}) {
            const bool minus = b == Branch::minus;
            w = std::max(w, rel_err(dk_eigenvalue(EvalPoint::from(S), b),
                                    shift_series_apply_numeric(minus ? operators::dk_minus() : operators::dk_plus(), S)));
            w = std::max(w, rel_err(om1_eigenvalue(p.sigma, p.rho, p.rho0, b),
                                    shift_series_apply_numeric(minus ? operators::om1_minus(s0) : operators::om1_plus(s0), S)));
            w = std::max(w, rel_err(om2_eigenvalue(p.sigma, p.rho, p.rho0, b),
                                    shift_series_apply_numeric(minus ? operators::om2_minus(s0) : operators::om2_plus(s0), S)));
            for (ModelKind k : {ModelKind::DK, ModelKind::OM1, ModelKind::OM2}) {
                const HamiltonianModel m{k, k == ModelKind::DK ? 0.0 : p.rho0, p.omega};
                w = std::max(w, rel_err(hamiltonian_eigenvalue(m, p.rho, b), hamiltonian_eigenvalue_numeric(m, p.rho, b)));
            }
        }
        worst[i] = w;
    });
    const double m = *std::max_element(worst.begin(), worst.end());
    out.push_back({"series", "closed form vs shift-series sums", series_bound, m, m <= series_bound});
}

} // namespace detail

inline bool selected(const Options& opt, const std::string& suite)
{
    return opt.suites.empty() || std::find(opt.suites.begin(), opt.suites.end(), suite) != opt.suites.end();
}

inline std::vector<Check> run(const Options& opt)
{
    for (const std::string& s : opt.suites) {
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end()) {
            throw ConfigError("verify: unknown suite '" + s + "'");
        }
    }
    std::vector<Check> out;
    if (selected(opt, "factorization")) {
        detail::factorization_suite(opt, out);
    }
    if (selected(opt, "intertwining")) {
        detail::intertwining_suite(opt, out);
    }
    if (selected(opt, "quadratic")) {
        detail::quadratic_suite(opt, out);
    }
    if (selected(opt, "confluent")) {
        detail::confluent_suite(opt, out);
    }
    if (selected(opt, "series")) {
        detail::series_suite(opt, out);
    }
    return out;
}

} // namespace susyzeta::verify

#endif
