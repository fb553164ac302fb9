// Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion and exits nonzero if
// any fails. Reference zeros and zeta values come from the independent oracle.

#include <susyzeta/euler_poly.hpp>
#include <susyzeta/grid_lab.hpp>
#include <susyzeta/io.hpp>
#include <susyzeta/spectral.hpp>
#include <susyzeta/susy.hpp>
#include <susyzeta/zeros.hpp>
#include <susyzeta/zeta.hpp>

#include "oracle/zeta_oracle.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace susyzeta;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;

    void require(bool ok, const std::string& what)
    {
        if (!ok) {
            passed = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

std::string fmt(double v)
{
    std::ostringstream s;
    s.precision(3);
    s << v;
    return s.str();
}

struct Process {
    int code;
    std::string out;
    double seconds;
};

Process run_cli(const std::string& args)
{
    const auto start = std::chrono::steady_clock::now();
    FILE* pipe = popen((std::string(SUSYZETA_BINARY) + " " + args + " 2>/dev/null").c_str(), "r");
    std::string out;
    if (pipe != nullptr) {
        std::array<char, 4096> buf{};
        std::size_t n = 0;
        while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
            out.append(buf.data(), n);
        }
    }
    const int status = pipe != nullptr ? pclose(pipe) : -1;
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return {status, out, secs};
}

double rel(complex a, complex b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

complex random_complex(std::mt19937_64& rng, double lo, double hi)
{
    std::uniform_real_distribution<double> u(lo, hi);
    return {u(rng), u(rng)};
}

const std::vector<double>& oracle_zeros()
{
    static const std::vector<double> z = oracle::zeros_between(10.0, 50.0);
    return z;
}

// 1. Zero location through the CLI.
Outcome zero_location()
{
    Outcome o;
    const Process p = run_cli("zeros --min 10 --max 50");
    o.require(p.code == 0, "exit status " + std::to_string(p.code));
    std::istringstream in(p.out);
    std::vector<ZeroRecord> zeros;
    try {
        zeros = io::read_zeros_csv(in);
    } catch (const std::exception& e) {
        o.require(false, e.what());
    }
    o.require(zeros.size() == 10, std::to_string(zeros.size()) + " records");
    o.require(oracle_zeros().size() == 10, "oracle found " + std::to_string(oracle_zeros().size()));
    double worst = 0.0;
    for (std::size_t k = 0; k < 3 && k < zeros.size() && k < oracle_zeros().size(); ++k) {
        worst = std::max(worst, std::abs(zeros[k].lambda_star - oracle_zeros()[k]));
    }
    o.require(worst <= 1e-6, "max |lambda - oracle| = " + fmt(worst));
    o.require(p.seconds <= 10.0, "runtime " + fmt(p.seconds) + " s");
    o.detail = o.passed ? "10 records, max |dlambda| = " + fmt(worst) + ", " + fmt(p.seconds) + " s" : o.detail;
    return o;
}

// 2. Series identities.
Outcome series_identities()
{
    Outcome o;
    const double e1 = std::abs(eta_series({1.0, 0.0}) - std::numbers::ln2);
    const double e2 = std::abs(eta_series({2.0, 0.0}) - std::numbers::pi * std::numbers::pi / 12.0);
    o.require(e1 <= 1e-12, "eta(1) off by " + fmt(e1));
    o.require(e2 <= 1e-12, "eta(2) off by " + fmt(e2));
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> sig(0.01, 0.99);
    std::uniform_real_distribution<double> lam(-50.0, 50.0);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const EvalPoint s{sig(rng), lam(rng)};
        const complex eta = eta_series(s);
        worst = std::max(worst, rel(eta, prefactor(s) * oracle::zeta(s.value())));
        worst = std::max(worst, rel(eta, prefactor(s) * zeta_strip(s)));
    }
    o.require(worst <= 1e-10, "identity deviation " + fmt(worst));
    o.detail = o.passed ? "eta(1), eta(2) within " + fmt(std::max(e1, e2)) + "; identity " + fmt(worst) : o.detail;
    return o;
}

// 3. Exact operator algebra.
Outcome operator_algebra()
{
    Outcome o;
    std::mt19937_64 rng(3);
    double worst = 0.0;
    bool all = true;
    const auto record = [&](const FactorizationCheck& c, const EulerPoly& lhs) {
        all = all && c.holds;
        double scale = 0.0;
        for (std::size_t j = 0; j <= EulerPoly::max_degree; ++j) {
            scale = std::max(scale, std::abs(lhs[j]));
        }
        worst = std::max(worst, c.max_deviation / scale);
    };
    for (int k = 0; k < 100; ++k) {
        const complex s0 = random_complex(rng, -3.0, 3.0);
        const FirstOrderTransform f = first_order_transform({s0});
        const ConfluentTransform c = confluent_transform({s0});
        const EulerPoly hm = rational_to_euler(f.h_minus());
        const EulerPoly hp = rational_to_euler(f.h_plus());
        // H1- = L+ L-, H1+ = L- L+
        record(verify_factorization(hm, {compose(as_homogeneous(f.l_plus), as_homogeneous(f.l_minus)).poly}), hm);
        record(verify_factorization(hp, {compose(as_homogeneous(f.l_minus), as_homogeneous(f.l_plus)).poly}), hp);
        // x^2 H1- = -(D + S0)(D - S0 - 1), x^2 H1+ = -(D - S0)(D + S0 - 1)
        record(verify_factorization(hm, {EulerPoly::constant(-1.0), EulerPoly::linear(1.0, s0),
                                         EulerPoly::linear(1.0, -s0 - 1.0)}),
               hm);
        record(verify_factorization(hp, {EulerPoly::constant(-1.0), EulerPoly::linear(1.0, -s0),
                                         EulerPoly::linear(1.0, s0 - 1.0)}),
               hp);
        // x^2 L2- = (D + S0)(D + S0 - 2), x^2 L2+ = (D - S0 - 1)(D - S0 + 1)
        const EulerPoly lm = rational_to_euler(c.l2_minus);
        const EulerPoly lp = rational_to_euler(c.l2_plus);
        record(verify_factorization(lm, {EulerPoly::linear(1.0, s0), EulerPoly::linear(1.0, s0 - 2.0)}), lm);
        record(verify_factorization(lp, {EulerPoly::linear(1.0, -s0 - 1.0), EulerPoly::linear(1.0, 1.0 - s0)}), lp);
    }
    o.require(all, "factorization relative deviation " + fmt(worst));

    double worst_eig = 0.0;
    for (int k = 0; k < 100; ++k) {
        const complex s0 = random_complex(rng, -3.0, 3.0);
        const complex S = random_complex(rng, -3.0, 3.0);
        const FirstOrderTransform f = first_order_transform({s0});
        const complex m = euler_apply(rational_to_euler(f.h_minus()), S);
        const complex p = euler_apply(rational_to_euler(f.h_plus()), S);
        const complex em = (s0 - S) * (s0 + S + 1.0);
        const complex ep = (s0 + S) * (s0 - S - 1.0);
        worst_eig = std::max({worst_eig, std::abs(m - em) / std::max(1.0, std::abs(em)),
                              std::abs(p - ep) / std::max(1.0, std::abs(ep))});
    }
    o.require(worst_eig <= exact_tolerance, "eigenvalue formula deviation " + fmt(worst_eig));
    o.detail = o.passed ? "factorizations " + fmt(worst) + ", eigenvalues " + fmt(worst_eig) : o.detail;
    return o;
}

// 4. Closed form vs brute-force sums.
Outcome closed_vs_series()
{
    Outcome o;
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> sig(0.05, 0.95);
    std::uniform_real_distribution<double> r(-30.0, 30.0);
    std::uniform_real_distribution<double> r0(-5.0, 5.0);
    std::uniform_real_distribution<double> om(-10.0, 10.0);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double sigma = sig(rng);
        const double rho = r(rng);
        const double rho0 = r0(rng);
        const double omega = om(rng);
        const complex s0{0.0, rho0};
        const complex S{sigma, -rho};
        for (Branch b : {Branch::minus, Branch::plus}) {
            const bool minus = b == Branch::minus;
            worst = std::max(worst, rel(dk_eigenvalue({sigma, -rho}, b),
                                        shift_series_apply_numeric(minus ? operators::dk_minus() : operators::dk_plus(), S)));
            worst = std::max(worst, rel(om1_eigenvalue(sigma, rho, rho0, b),
                                        shift_series_apply_numeric(minus ? operators::om1_minus(s0) : operators::om1_plus(s0), S)));
            worst = std::max(worst, rel(om2_eigenvalue(sigma, rho, rho0, b),
                                        shift_series_apply_numeric(minus ? operators::om2_minus(s0) : operators::om2_plus(s0), S)));
            for (ModelKind kind : {ModelKind::DK, ModelKind::OM1, ModelKind::OM2}) {
                const HamiltonianModel m{kind, kind == ModelKind::DK ? 0.0 : rho0, omega};
                worst = std::max(worst, rel(hamiltonian_eigenvalue(m, rho, b), hamiltonian_eigenvalue_numeric(m, rho, b)));
            }
        }
    }
    o.require(worst <= 1e-8, "max deviation " + fmt(worst));
    o.detail = o.passed ? "max deviation " + fmt(worst) + " over 50 points" : o.detail;
    return o;
}

// 5. Grid residuals and convergence.
Outcome grid_residuals()
{
    Outcome o;
    const grid::GridSpec<double> g{0.5, 4.0, 4096, grid::Spacing::log_uniform};
    const complex s0{0.0, 1.0};
    const auto first = grid::intertwining_residual(s0, complex{0.5, -3.0}, grid::Order::first, g);
    const auto confluent = grid::intertwining_residual(s0, complex{0.5, -2.0}, grid::Order::confluent, g);
    const auto quad = grid::quadratic_algebra_residual(s0, complex{0.5, -2.0}, g);
    o.require(first.relative_l2 <= 1e-6, "first-order intertwining " + fmt(first.relative_l2));
    o.require(confluent.relative_l2 <= 1e-4, "confluent intertwining " + fmt(confluent.relative_l2));
    o.require(quad.relative_l2 <= 1e-4, "quadratic algebra " + fmt(quad.relative_l2));
    for (const auto* r : {&first, &confluent, &quad}) {
        o.require(std::abs(r->convergence_order - 2.0) <= 0.3, "order " + fmt(r->convergence_order));
    }
    if (o.passed) {
        o.detail = "L2 " + fmt(first.relative_l2) + " / " + fmt(confluent.relative_l2) + " / " + fmt(quad.relative_l2) +
                   ", orders " + fmt(first.convergence_order) + " / " + fmt(confluent.convergence_order) + " / " +
                   fmt(quad.convergence_order);
    }
    return o;
}

// 6. Zero-energy modes at the located zeros.
Outcome zero_energy_modes()
{
    Outcome o;
    ZeroSearchConfig cfg;
    const ZeroSearchResult found = locate_zeros(cfg);
    o.require(!found.zeros.empty(), "no zeros located");
    std::mt19937_64 rng(6);
    std::uniform_int_distribution<int> r0(-40, 40);  // rho0 in steps of 1/8
    std::uniform_int_distribution<int> om(-40, 40);  // omega in steps of 1/4
    double worst_om2 = 0.0;
    double worst_om1 = 0.0;
    bool invariant = true;
    for (const ZeroRecord& z : found.zeros) {
        worst_om2 = std::max(worst_om2, std::abs(hamiltonian_eigenvalue({ModelKind::OM2, 0.0, 0.0}, z.lambda_star,
                                                                         Branch::minus)));
        // OM1 with the first factor at the zero: rho - rho0 +- omega/2 = lambda*.
        for (const Decomposition& d : default_decompositions(z.lambda_star)) {
            worst_om1 = std::max(worst_om1,
                                 std::abs(hamiltonian_eigenvalue({ModelKind::OM1, d.rho0, d.omega}, d.rho, d.branch)));
        }
        // Dyadic lambda, rho0, omega make rho - rho0 +- omega/2 reproduce lambda exactly.
        const double mu = std::ldexp(std::round(std::ldexp(z.lambda_star, 40)), -40);
        const complex reference = hamiltonian_eigenvalue({ModelKind::OM2, 0.0, 0.0}, mu, Branch::minus);
        for (int k = 0; k < 10; ++k) {
            const Branch b = k % 2 == 0 ? Branch::minus : Branch::plus;
            const Decomposition d = decompose(mu, r0(rng) / 8.0, om(rng) / 4.0, b);
            invariant = invariant && critical_shift(d.rho, d.rho0, d.omega, d.branch) == mu &&
                        hamiltonian_eigenvalue({ModelKind::OM2, d.rho0, d.omega}, d.rho, d.branch) == reference;
        }
    }
    o.require(worst_om2 <= 1e-10, "OM2 residual " + fmt(worst_om2));
    o.require(worst_om1 <= 1e-6, "OM1 residual " + fmt(worst_om1));
    o.require(invariant, "mu-invariance broken");
    if (o.passed) {
        o.detail = std::to_string(found.zeros.size()) + " zeros, OM2 " + fmt(worst_om2) + ", OM1 " + fmt(worst_om1) +
                   ", mu-invariance exact";
    }
    return o;
}

// 7. DK reduction.
Outcome dk_reduction()
{
    Outcome o;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> r(-40.0, 40.0);
    std::uniform_real_distribution<double> om(-10.0, 10.0);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const double rho = r(rng);
        const double omega = om(rng);
        for (Branch b : {Branch::minus, Branch::plus}) {
            // H_DK on |x|^(-1/2 + i rho): O_DK- and O_DK+ both act at s = 1/2 - i(rho -+ omega/2).
            const EvalPoint s{0.5, -(rho + branch_sign(b) * omega / 2.0)};
            const complex dk = dk_eigenvalue(s, Branch::minus) * dk_eigenvalue(s, Branch::plus);
            worst = std::max(worst, rel(hamiltonian_eigenvalue({ModelKind::OM1, 0.0, omega}, rho, b), dk));
        }
    }
    o.require(worst <= 1e-12, "max deviation " + fmt(worst));
    o.detail = o.passed ? "max deviation " + fmt(worst) : o.detail;
    return o;
}

// 8. Potential profiles through the CLI.
Outcome potential_profiles()
{
    Outcome o;
    const SeedExponent seed = SeedExponent::imaginary(1.0);
    o.require(confluent_transform(seed).v2_minus == first_order_transform(seed).v_minus, "V2- != V1-");

    const double eps = std::numeric_limits<double>::epsilon();
    const auto check_table = [&](const std::string& args, bool starts_at_one) {
        const Process p = run_cli(args);
        o.require(p.code == 0, args + ": exit status " + std::to_string(p.code));
        std::istringstream in(p.out);
        io::CsvTable t;
        try {
            t = io::read_csv(in);
        } catch (const std::exception& e) {
            o.require(false, e.what());
            return;
        }
        o.require(t.header.size() == 7, "expected 7 columns");
        o.require(!t.comments.empty() && t.comments[0].find("V2_minus = V1_minus") != std::string::npos,
                  "header lacks the V2- note");
        if (t.rows.empty() || t.header.size() != 7) {
            o.require(false, "empty table");
            return;
        }
        const std::array<complex, 3> couplings{complex{-1.0, 1.0}, complex{-1.0, -1.0}, complex{1.0, -3.0}};
        double worst = 0.0;
        for (const auto& row : t.rows) {
            const double x2 = row[0] * row[0];
            for (std::size_t c = 0; c < 3; ++c) {
                const complex v{row[1 + 2 * c], row[2 + 2 * c]};
                worst = std::max(worst, std::abs(v * x2 - couplings[c]) / std::abs(couplings[c]));
            }
        }
        o.require(worst <= 16 * eps, "x^2 V deviation " + fmt(worst));
        if (starts_at_one) {
            const auto& r = t.rows.front();
            o.require(r[0] == 1.0 && r[1] == -1.0 && r[2] == 1.0, "V1-(1) != -1 + i");
            o.require(r[5] == 1.0 && r[6] == -3.0, "V2+(1) != 1 - 3i");
        }
    };
    check_table("potentials --rho0 1", false);
    check_table("potentials --rho0 1 --xmin 1 --xmax 5", true);
    o.detail = o.passed ? "V1-(1) = -1+1i, V2+(1) = 1-3i, x^2 V constant to 16 ulp" : o.detail;
    return o;
}

} // namespace

int main()
{
    struct Criterion {
        const char* name;
        Outcome (*check)();
    };
    const std::array<Criterion, 8> criteria{{
        {"Zero location", zero_location},
        {"Series identities", series_identities},
        {"Exact operator algebra", operator_algebra},
        {"Closed form vs brute force", closed_vs_series},
        {"Intertwining and quadratic algebra", grid_residuals},
        {"Zero-energy mode", zero_energy_modes},
        {"DK reduction", dk_reduction},
        {"Potential profiles", potential_profiles},
    }};
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].check();
        } catch (const std::exception& e) {
            o.passed = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += o.passed ? 0 : 1;
        std::cout << (o.passed ? "PASS" : "FAIL") << " criterion " << (i + 1) << " (" << criteria[i].name
                  << "): " << o.detail << '\n';
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
              << " criteria passed\n";
    return failed == 0 ? 0 : 1;
}
