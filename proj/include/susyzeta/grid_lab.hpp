#ifndef SUSYZETA_GRID_LAB_HPP
#define SUSYZETA_GRID_LAB_HPP

// Finite-difference checks of the SUSY relations on a sampled half-line.
//
// Operators are applied with three-point central stencils on (possibly non-uniform)
// grids; composite operators are applied stencil after stencil, never simplified
// symbolically. A point whose stencil reaches past the ends of the grid is invalid and
// invalidity propagates through composition.

#include <susyzeta/errors.hpp>
#include <susyzeta/euler_poly.hpp>
#include <susyzeta/susy.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <sstream>
#include <vector>

namespace susyzeta::grid {

enum class Spacing { uniform, log_uniform };

inline constexpr std::size_t min_points = 16;

// Points at each end left out of residual norms, on top of stencil invalidity.
inline constexpr std::size_t interior_margin = 2;

template <class Real = double>
struct GridSpec {
    Real x_min = Real(0.5);
    Real x_max = Real(4);
    std::size_t n_points = 4096;
    Spacing spacing = Spacing::log_uniform;

    void validate() const
    {
        if (!(x_min > 0) || !(x_min < x_max) || !std::isfinite(static_cast<double>(x_max))) {
            throw DomainError("GridSpec: need 0 < x_min < x_max");
        }
        if (n_points < min_points) {
            std::ostringstream msg;
            msg << "GridSpec: " << n_points << " points, at least " << min_points << " required";
            throw GridTooCoarse(msg.str());
        }
    }

    std::vector<Real> points() const
    {
        validate();
        std::vector<Real> x(n_points);
        const Real last = static_cast<Real>(n_points - 1);
        for (std::size_t i = 0; i < n_points; ++i) {
            const Real t = static_cast<Real>(i) / last;
            if (spacing == Spacing::uniform) {
                x[i] = x_min + (x_max - x_min) * t;
            } else {
                using std::exp;
                using std::log;
                x[i] = exp(log(x_min) + (log(x_max) - log(x_min)) * t);
            }
        }
        x.front() = x_min;
        x.back() = x_max;
        return x;
    }

    // Step in x (uniform) or in ln x (log-uniform); the variable the stencil error scales with.
    Real step() const
    {
        using std::log;
        const Real span = spacing == Spacing::uniform ? x_max - x_min : log(x_max) - log(x_min);
        return span / static_cast<Real>(n_points - 1);
    }

    // The grid with doubled step: every other point of a (2m+1)-point grid.
    GridSpec coarsened() const { return {x_min, x_max, (n_points + 1) / 2, spacing}; }
};

template <class Real = double>
struct Sampled {
    std::vector<std::complex<Real>> values;
    std::vector<char> valid;

    static Sampled zeros(std::size_t n) { return {std::vector<std::complex<Real>>(n), std::vector<char>(n, 1)}; }
    std::size_t size() const noexcept { return values.size(); }
};

template <class Real = double>
struct ResidualReport {
    Real relative_l2 = 0;
    Real max_relative = 0;
    Real convergence_order = std::numeric_limits<Real>::quiet_NaN();
    GridSpec<Real> grid{};
};

// x^(-S) = exp(-S ln x), x > 0.
template <class Real = double>
Sampled<Real> sample_monomial(std::complex<double> S, const GridSpec<Real>& grid)
{
    const std::vector<Real> x = grid.points();
    Sampled<Real> f = Sampled<Real>::zeros(x.size());
    const std::complex<Real> s{static_cast<Real>(S.real()), static_cast<Real>(S.imag())};
    for (std::size_t i = 0; i < x.size(); ++i) {
        using std::log;
        f.values[i] = std::exp(-s * std::complex<Real>(log(x[i])));
    }
    return f;
}

namespace detail {

template <class Real>
std::complex<Real> widen(std::complex<double> z)
{
    return {static_cast<Real>(z.real()), static_cast<Real>(z.imag())};
}

template <class Real>
void require_match(const Sampled<Real>& f, const std::vector<Real>& x)
{
    if (f.size() != x.size() || f.valid.size() != x.size()) {
        throw DomainError("grid: sampled function does not match the grid");
    }
}

// Three-point derivative stencils on a non-uniform grid, second order on smooth
// (uniform or geometric) spacing.
template <class Real>
void derivatives(const Sampled<Real>& f, const std::vector<Real>& x, Sampled<Real>& d1, Sampled<Real>& d2)
{
    const std::size_t n = x.size();
    d1 = Sampled<Real>::zeros(n);
    d2 = Sampled<Real>::zeros(n);
    d1.valid.front() = d1.valid.back() = 0;
    d2.valid.front() = d2.valid.back() = 0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const bool ok = f.valid[i - 1] && f.valid[i] && f.valid[i + 1];
        d1.valid[i] = d2.valid[i] = ok ? 1 : 0;
        if (!ok) {
            continue;
        }
        const Real hm = x[i] - x[i - 1];
        const Real hp = x[i + 1] - x[i];
        const Real hs = hm + hp;
        d1.values[i] = f.values[i - 1] * (-hp / (hm * hs)) + f.values[i] * ((hp - hm) / (hm * hp)) +
                       f.values[i + 1] * (hm / (hp * hs));
        d2.values[i] = (f.values[i - 1] / (hm * hs) - f.values[i] / (hm * hp) + f.values[i + 1] / (hp * hs)) * Real(2);
    }
}

} // namespace detail

// a2 f'' + (b/x) f' + (c/x^2) f
template <class Real = double>
Sampled<Real> apply_operator_fd(const RationalDiffOp& op, const Sampled<Real>& f, const GridSpec<Real>& grid)
{
    const std::vector<Real> x = grid.points();
    detail::require_match(f, x);
    Sampled<Real> d1, d2;
    detail::derivatives(f, x, d1, d2);
    const auto a2 = detail::widen<Real>(op.a2);
    const auto b = detail::widen<Real>(op.b_over_x);
    const auto c = detail::widen<Real>(op.c_over_x2);
    Sampled<Real> out = Sampled<Real>::zeros(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out.valid[i] = d2.valid[i];
        if (out.valid[i]) {
            out.values[i] = a2 * d2.values[i] + (b / x[i]) * d1.values[i] + (c / (x[i] * x[i])) * f.values[i];
        }
    }
    return out;
}

// d_coeff f' + (c/x) f
template <class Real = double>
Sampled<Real> apply_operator_fd(const FirstOrderDiffOp& op, const Sampled<Real>& f, const GridSpec<Real>& grid)
{
    const std::vector<Real> x = grid.points();
    detail::require_match(f, x);
    Sampled<Real> d1, d2;
    detail::derivatives(f, x, d1, d2);
    const auto d = detail::widen<Real>(op.d_coeff);
    const auto c = detail::widen<Real>(op.c_over_x);
    Sampled<Real> out = Sampled<Real>::zeros(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out.valid[i] = d1.valid[i];
        if (out.valid[i]) {
            out.values[i] = d * d1.values[i] + (c / x[i]) * f.values[i];
        }
    }
    return out;
}

struct Norms {
    double difference;
    double reference;
    double max_relative;
};

// ||a - b|| and ||reference|| over points valid in both, excluding interior_margin points at each end.
template <class Real>
Norms interior_norms(const Sampled<Real>& a, const Sampled<Real>& b, const Sampled<Real>& reference)
{
    const std::size_t n = a.size();
    long double diff = 0, ref = 0;
    double max_rel = 0;
    for (std::size_t i = interior_margin; i + interior_margin < n; ++i) {
        if (!a.valid[i] || !b.valid[i] || !reference.valid[i]) {
            continue;
        }
        const long double d = std::abs(a.values[i] - b.values[i]);
        const long double r = std::abs(reference.values[i]);
        diff += d * d;
        ref += r * r;
        if (r > 0) {
            max_rel = std::max(max_rel, static_cast<double>(d / r));
        }
    }
    return {static_cast<double>(std::sqrt(diff)), static_cast<double>(std::sqrt(ref)), max_rel};
}

template <class Real>
Real relative_or_absolute(const Norms& n)
{
    return static_cast<Real>(n.reference > 0 ? n.difference / n.reference : n.difference);
}

enum class Order { first, confluent };

struct IntertwiningOptions {
    // Relative change applied to the H+ coupling; a nonzero value breaks the identity.
    double coupling_perturbation = 0.0;
};

namespace detail {

template <class Real>
ResidualReport<Real> single_grid_intertwining(std::complex<double> s0, std::complex<double> s_test, Order order,
                                              const GridSpec<Real>& grid, const IntertwiningOptions& opt)
{
    const Sampled<Real> f = sample_monomial(s_test, grid);
    Sampled<Real> lhs, rhs;
    if (order == Order::first) {
        const FirstOrderTransform t = first_order_transform({s0});
        const RationalDiffOp h_plus = schrodinger(t.v_plus * (1.0 + opt.coupling_perturbation));
        lhs = apply_operator_fd(h_plus, apply_operator_fd(t.l_minus, f, grid), grid);
        rhs = apply_operator_fd(t.l_minus, apply_operator_fd(t.h_minus(), f, grid), grid);
    } else {
        const ConfluentTransform t = confluent_transform({s0});
        const RationalDiffOp h_plus = schrodinger(t.v2_plus * (1.0 + opt.coupling_perturbation));
        lhs = apply_operator_fd(h_plus, apply_operator_fd(t.l2_minus, f, grid), grid);
        rhs = apply_operator_fd(t.l2_minus, apply_operator_fd(t.h_minus(), f, grid), grid);
    }
    const Norms n = interior_norms(lhs, rhs, lhs);
    ResidualReport<Real> r{};
    r.relative_l2 = relative_or_absolute<Real>(n);
    r.max_relative = static_cast<Real>(n.max_relative);
    r.grid = grid;
    return r;
}

template <class Real>
ResidualReport<Real> single_grid_quadratic(std::complex<double> s0, const Sampled<Real>& f, const GridSpec<Real>& grid)
{
    const ConfluentTransform t = confluent_transform({s0});
    const Sampled<Real> lhs = apply_operator_fd(t.l2_plus, apply_operator_fd(t.l2_minus, f, grid), grid);
    const Sampled<Real> rhs = apply_operator_fd(t.h_minus(), apply_operator_fd(t.h_minus(), f, grid), grid);
    const Norms n = interior_norms(lhs, rhs, lhs);
    ResidualReport<Real> r{};
    r.relative_l2 = relative_or_absolute<Real>(n);
    r.max_relative = static_cast<Real>(n.max_relative);
    r.grid = grid;
    return r;
}

// Observed order from residuals on the coarsened and the requested grid.
template <class Real>
Real observed_order(Real coarse, Real fine, const GridSpec<Real>& coarse_grid, const GridSpec<Real>& fine_grid)
{
    using std::log;
    if (!(coarse > 0) || !(fine > 0)) {
        return std::numeric_limits<Real>::quiet_NaN();
    }
    return log(coarse / fine) / log(coarse_grid.step() / fine_grid.step());
}

} // namespace detail

// Relative L2 norm of (H+ L- - L- H-) x^(-S_test), with the order observed against the
// grid of doubled step.
template <class Real = double>
ResidualReport<Real> intertwining_residual(std::complex<double> s0, std::complex<double> s_test, Order order,
                                           const GridSpec<Real>& grid, const IntertwiningOptions& opt = {})
{
    grid.validate();
    const GridSpec<Real> coarse = grid.coarsened();
    coarse.validate();
    ResidualReport<Real> fine = detail::single_grid_intertwining(s0, s_test, order, grid, opt);
    const ResidualReport<Real> rough = detail::single_grid_intertwining(s0, s_test, order, coarse, opt);
    fine.convergence_order = detail::observed_order(rough.relative_l2, fine.relative_l2, coarse, grid);
    return fine;
}

// Relative L2 norm of (L2+ L2- - (H2-)^2) x^(-S_test) for the confluent transformation.
template <class Real = double>
ResidualReport<Real> quadratic_algebra_residual(std::complex<double> s0, std::complex<double> s_test,
                                                const GridSpec<Real>& grid)
{
    grid.validate();
    const GridSpec<Real> coarse = grid.coarsened();
    coarse.validate();
    ResidualReport<Real> fine = detail::single_grid_quadratic(s0, sample_monomial(s_test, grid), grid);
    const ResidualReport<Real> rough = detail::single_grid_quadratic(s0, sample_monomial(s_test, coarse), coarse);
    fine.convergence_order = detail::observed_order(rough.relative_l2, fine.relative_l2, coarse, grid);
    return fine;
}

// Same check on an explicitly sampled function (absolute norm when it vanishes).
template <class Real = double>
ResidualReport<Real> quadratic_algebra_residual(std::complex<double> s0, const Sampled<Real>& f,
                                                const GridSpec<Real>& grid)
{
    grid.validate();
    return detail::single_grid_quadratic(s0, f, grid);
}

// ||H f|| / ||a2 f''|| for an exact zero mode f = x^(-S) of H, with observed order.
template <class Real = double>
ResidualReport<Real> zero_mode_residual(const RationalDiffOp& h, std::complex<double> S, const GridSpec<Real>& grid)
{
    const auto one = [&](const GridSpec<Real>& g) {
        const Sampled<Real> f = sample_monomial(S, g);
        const Sampled<Real> hf = apply_operator_fd(h, f, g);
        const Sampled<Real> kinetic = apply_operator_fd(RationalDiffOp{h.a2, 0.0, 0.0}, f, g);
        const Sampled<Real> zero = Sampled<Real>::zeros(f.size());
        const Norms n = interior_norms(hf, zero, kinetic);
        ResidualReport<Real> r{};
        r.relative_l2 = relative_or_absolute<Real>(n);
        r.max_relative = static_cast<Real>(n.max_relative);
        r.grid = g;
        return r;
    };
    grid.validate();
    const GridSpec<Real> coarse = grid.coarsened();
    ResidualReport<Real> fine = one(grid);
    fine.convergence_order = detail::observed_order(one(coarse).relative_l2, fine.relative_l2, coarse, grid);
    return fine;
}

namespace detail {

// Adaptive Simpson on [a, b] for a complex integrand.
template <class Real, class F>
std::complex<Real> adaptive_simpson(const F& f, Real a, Real b, std::complex<Real> fa, std::complex<Real> fm,
                                    std::complex<Real> fb, std::complex<Real> whole, Real tol, int depth)
{
    const Real m = (a + b) / 2;
    const Real lm = (a + m) / 2;
    const Real rm = (m + b) / 2;
    const std::complex<Real> flm = f(lm);
    const std::complex<Real> frm = f(rm);
    const std::complex<Real> left = (m - a) / 6 * (fa + Real(4) * flm + fm);
    const std::complex<Real> right = (b - m) / 6 * (fm + Real(4) * frm + fb);
    const std::complex<Real> delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15 * tol) {
        return left + right + delta / Real(15);
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

template <class Real, class F>
std::complex<Real> integrate(const F& f, Real a, Real b, Real tol)
{
    const std::complex<Real> fa = f(a);
    const std::complex<Real> fb = f(b);
    const std::complex<Real> fm = f((a + b) / 2);
    const std::complex<Real> whole = (b - a) / 6 * (fa + Real(4) * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

} // namespace detail

// Integrates u^2 = y^(-2 S0) numerically from x0 across the grid and compares w0 - I(x)
// with x^(1-2S0)/(2S0-1). relative_l2 and max_relative describe the deviation.
template <class Real = double>
ResidualReport<Real> confluent_integral_check(std::complex<double> s0, double x0, const GridSpec<Real>& grid,
                                              Real quadrature_tolerance = Real(1e-13))
{
    const ConfluentTransform t = confluent_transform({s0}, x0);
    const std::vector<Real> x = grid.points();
    const std::complex<Real> s0r = detail::widen<Real>(s0);
    const auto u2 = [&](Real y) {
        using std::log;
        return std::exp(Real(-2) * s0r * std::complex<Real>(log(y)));
    };

    // Cumulative integrals from x0, walking outwards through the grid points on each side.
    const Real x0r = static_cast<Real>(x0);
    std::vector<std::complex<Real>> integral(x.size());
    const auto first_right = static_cast<std::size_t>(std::lower_bound(x.begin(), x.end(), x0r) - x.begin());
    {
        Real from = x0r;
        std::complex<Real> acc{};
        for (std::size_t i = first_right; i < x.size(); ++i) {
            acc += detail::integrate<Real>(u2, from, x[i], quadrature_tolerance);
            integral[i] = acc;
            from = x[i];
        }
    }
    {
        Real from = x0r;
        std::complex<Real> acc{};
        for (std::size_t i = first_right; i-- > 0;) {
            acc -= detail::integrate<Real>(u2, x[i], from, quadrature_tolerance);
            integral[i] = acc;
            from = x[i];
        }
    }

    Sampled<Real> numeric = Sampled<Real>::zeros(x.size());
    Sampled<Real> closed = Sampled<Real>::zeros(x.size());
    const std::complex<Real> w0 = detail::widen<Real>(t.w0);
    for (std::size_t i = 0; i < x.size(); ++i) {
        numeric.values[i] = w0 - integral[i];
        closed.values[i] = detail::widen<Real>(t.w_closed_form(static_cast<double>(x[i])));
    }
    // No stencil is involved, so every point counts.
    long double diff = 0, ref = 0;
    double max_rel = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const long double d = std::abs(numeric.values[i] - closed.values[i]);
        const long double r = std::abs(closed.values[i]);
        diff += d * d;
        ref += r * r;
        max_rel = std::max(max_rel, static_cast<double>(d / r));
    }
    ResidualReport<Real> report{};
    report.relative_l2 = static_cast<Real>(std::sqrt(diff / ref));
    report.max_relative = static_cast<Real>(max_rel);
    report.grid = grid;
    return report;
}

// min |w(x)| over the grid for the confluent w with the cancelling choice of w0.
template <class Real = double>
double confluent_w_min_modulus(std::complex<double> s0, double x0, const GridSpec<Real>& grid)
{
    const ConfluentTransform t = confluent_transform({s0}, x0);
    double m = std::numeric_limits<double>::infinity();
    for (Real xi : grid.points()) {
        m = std::min(m, std::abs(t.w(static_cast<double>(xi))));
    }
    return m;
}

} // namespace susyzeta::grid

#endif
