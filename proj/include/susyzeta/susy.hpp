#ifndef SUSYZETA_SUSY_HPP
#define SUSYZETA_SUSY_HPP

// First-order and confluent second-order SUSY transformations seeded by
// u(x) = x^(-S0) at factorization energy 0, on the half-line x > 0.
//
// Every potential in the family is coupling / x^2 and every intertwiner is
// scale-homogeneous, so both are stored as coefficients.

#include <susyzeta/errors.hpp>
#include <susyzeta/euler_poly.hpp>

#include <cmath>
#include <complex>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace susyzeta {

struct SeedExponent {
    complex s0;

    // S0 = i rho0, the critical-line choice.
    static SeedExponent imaginary(double rho0) { return {complex{0.0, rho0}}; }
};

// H = -d^2/dx^2 + coupling / x^2
inline RationalDiffOp schrodinger(complex coupling) { return {-1.0, 0.0, coupling}; }

struct FirstOrderTransform {
    SeedExponent seed;
    complex w_coeff;   // w(x) = w_coeff / x
    complex v_minus;   // V1-(x) = v_minus / x^2
    complex v_plus;    // V1+(x) = v_plus / x^2
    FirstOrderDiffOp l_minus;
    FirstOrderDiffOp l_plus;
    double epsilon = 0.0;

    RationalDiffOp h_minus() const { return schrodinger(v_minus); }
    RationalDiffOp h_plus() const { return schrodinger(v_plus); }

    complex superpotential(double x) const { return w_coeff / x; }
};

inline FirstOrderTransform first_order_transform(SeedExponent seed)
{
    const complex s0 = seed.s0;
    // w = -u'/u = S0/x and w' = -S0/x^2, so V+- = w^2 +- w' = S0 (S0 -+ 1) / x^2.
    const complex w = s0;
    const complex w_prime = -s0;
    FirstOrderTransform t{};
    t.seed = seed;
    t.w_coeff = w;
    t.v_minus = w * w - w_prime;
    t.v_plus = w * w + w_prime;
    t.l_minus = {1.0, w};   //  d/dx + w
    t.l_plus = {-1.0, w};   // -d/dx + w
    return t;
}

struct ConfluentTransform {
    SeedExponent seed;
    double x0 = 1.0;
    complex w0;          // integration constant of w = w0 - int_{x0}^x u^2
    complex eta_coeff;   // eta(x) = eta_coeff / x
    complex gamma_coeff; // gamma(x) = gamma_coeff / x^2
    complex v2_minus;
    complex v2_plus;
    RationalDiffOp l2_minus;
    RationalDiffOp l2_plus;
    double epsilon = 0.0;

    RationalDiffOp h_minus() const { return schrodinger(v2_minus); }
    RationalDiffOp h_plus() const { return schrodinger(v2_plus); }

    // w(x) = w0 - (x^(1-2S0) - x0^(1-2S0)) / (1 - 2S0)
    complex w(double x) const
    {
        const complex e = 1.0 - 2.0 * seed.s0;
        return w0 - (std::pow(complex{x}, e) - std::pow(complex{x0}, e)) / e;
    }

    // The same function once w0 cancels the x0 term: x^(1-2S0) / (2S0 - 1).
    complex w_closed_form(double x) const
    {
        const complex e = 1.0 - 2.0 * seed.s0;
        return std::pow(complex{x}, e) / (-e);
    }

    complex eta(double x) const { return eta_coeff / x; }
    complex gamma(double x) const { return gamma_coeff / (x * x); }
};

// Below this |1 - 2 S0| the seed is treated as S0 = 1/2.
inline constexpr double degenerate_seed_tolerance = 1e-12;

inline ConfluentTransform confluent_transform(SeedExponent seed, double x0 = 1.0)
{
    if (!(x0 > 0.0) || !std::isfinite(x0)) {
        throw DomainError("confluent_transform: x0 must be a positive real");
    }
    const complex s0 = seed.s0;
    const complex e = 1.0 - 2.0 * s0;
    if (std::abs(e) < degenerate_seed_tolerance) {
        throw DegenerateSeed("confluent_transform: S0 = 1/2 makes the integral of u^2 logarithmic");
    }

    ConfluentTransform t{};
    t.seed = seed;
    t.x0 = x0;
    t.w0 = -std::pow(complex{x0}, e) / e;

    // eta = -w'/w with w = x^(1-2S0)/(2S0-1): eta = (2S0 - 1)/x.
    const complex a = 2.0 * s0 - 1.0;
    t.eta_coeff = a;

    // For eta = a/x the pieces of
    //   V- = eta''/(2 eta) - (eta'/(2 eta))^2 - eta' + eta^2/4 + eps
    // contribute 1, 1/4, a and a^2/4 to the coupling.
    t.v2_minus = 1.0 - 0.25 + a + a * a / 4.0 + t.epsilon;
    // V+ = V- + 2 eta' with eta' = -a/x^2
    t.v2_plus = t.v2_minus - 2.0 * a;
    // gamma = eta^2/2 - eta'/2 - V- + eps
    t.gamma_coeff = a * a / 2.0 + a / 2.0 - t.v2_minus + t.epsilon;

    t.l2_minus = {1.0, a, t.gamma_coeff};
    // Formal transpose of d^2 + (a/x) d + g/x^2 is d^2 - (a/x) d + (g + a)/x^2.
    t.l2_plus = {1.0, -a, t.gamma_coeff + a};
    return t;
}

struct PotentialColumn {
    std::string name;
    complex coupling;
};

struct PotentialTable {
    SeedExponent seed;
    std::vector<PotentialColumn> columns;
    std::vector<double> x;
    std::vector<std::vector<complex>> values; // values[row][column]
    std::string note;
};

namespace detail {

inline PotentialTable tabulate(SeedExponent seed, std::vector<PotentialColumn> columns, std::span<const double> grid,
                               std::string note)
{
    PotentialTable table{seed, std::move(columns), {}, {}, std::move(note)};
    table.x.reserve(grid.size());
    table.values.reserve(grid.size());
    for (double x : grid) {
        if (!(x > 0.0) || !std::isfinite(x)) {
            std::ostringstream msg;
            msg << "potential_profile: grid point " << x << " is not a positive real";
            throw DomainError(msg.str());
        }
        std::vector<complex> row;
        row.reserve(table.columns.size());
        for (const PotentialColumn& c : table.columns) {
            row.push_back(c.coupling / (x * x));
        }
        table.x.push_back(x);
        table.values.push_back(std::move(row));
    }
    return table;
}

} // namespace detail

inline PotentialTable potential_profile(const FirstOrderTransform& t, std::span<const double> grid)
{
    return detail::tabulate(t.seed, {{"V1_minus", t.v_minus}, {"V1_plus", t.v_plus}}, grid, {});
}

inline PotentialTable potential_profile(const ConfluentTransform& t, std::span<const double> grid)
{
    return detail::tabulate(t.seed, {{"V2_minus", t.v2_minus}, {"V2_plus", t.v2_plus}}, grid, {});
}

// V1-, V1+ and V2+ on a common grid. V2- is left out: it coincides with V1-.
inline PotentialTable potential_profile(const FirstOrderTransform& first, const ConfluentTransform& confluent,
                                        std::span<const double> grid)
{
    if (first.seed.s0 != confluent.seed.s0) {
        throw DomainError("potential_profile: transforms built from different seeds");
    }
    return detail::tabulate(first.seed,
                            {{"V1_minus", first.v_minus}, {"V1_plus", first.v_plus}, {"V2_plus", confluent.v2_plus}},
                            grid, "V2_minus = V1_minus (omitted)");
}

} // namespace susyzeta

#endif
