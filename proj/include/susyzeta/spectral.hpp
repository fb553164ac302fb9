#ifndef SUSYZETA_SPECTRAL_HPP
#define SUSYZETA_SPECTRAL_HPP

// Dirichlet shift-series operators and the Hamiltonians built from them.
//
// A shift-series operator is
//
//     O = sum_{n>=1} (-1)^(n+1) n^(-p) exp((ln n)(alpha D + beta)),   D = x d/dx.
//
// Since exp(c D) f(x) = f(e^c x), it acts on f(x) = x^(-S) as the scalar
// eta(p - beta + alpha S). Multiplication by x^c shifts S to S - c, so the |x|^(+-i omega/2)
// dressings of the raising and lowering operators are exponent shifts.

#include <susyzeta/errors.hpp>
#include <susyzeta/zeta.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace susyzeta {

enum class Branch { minus, plus };

inline double branch_sign(Branch b) noexcept { return b == Branch::plus ? 1.0 : -1.0; }

inline const char* to_string(Branch b) noexcept { return b == Branch::plus ? "plus" : "minus"; }

struct ShiftSeriesOperator {
    double n_power = 0.0; // p in a_n = (-1)^(n+1) / n^p
    int alpha = 1;        // +-1
    complex beta;

    // Argument of eta in the eigenvalue on x^(-S).
    complex eta_argument(complex S) const noexcept { return n_power - beta + static_cast<double>(alpha) * S; }

    bool converges_on(complex S) const noexcept { return eta_argument(S).real() > 0.0; }
};

namespace operators {

// O_DK-: sum (-1)^(n+1) exp((ln n) D)
inline ShiftSeriesOperator dk_minus() { return {0.0, 1, 0.0}; }
// O_DK+: sum (-1)^(n+1)/n exp((ln 1/n) D)
inline ShiftSeriesOperator dk_plus() { return {1.0, -1, 0.0}; }
// O1-: sum (-1)^(n+1) exp((ln n)(D + S0))
inline ShiftSeriesOperator om1_minus(complex s0) { return {0.0, 1, s0}; }
// O1+: sum (-1)^(n+1)/n^2 exp((ln n)(-D + S0 + 1))
inline ShiftSeriesOperator om1_plus(complex s0) { return {2.0, -1, s0 + 1.0}; }
// O_OM2-: sum (-1)^(n+1)/n exp((ln n)(D - S0 + 1))
inline ShiftSeriesOperator om2_minus(complex s0) { return {1.0, 1, 1.0 - s0}; }
// O_OM2+: sum (-1)^(n+1)/n^2 exp((ln 1/n)(D - S0 - 1))
inline ShiftSeriesOperator om2_plus(complex s0) { return {2.0, -1, s0 + 1.0}; }

} // namespace operators

// Closed form of the action on x^(-S): eta(p - beta + alpha S).
inline complex shift_series_eigenvalue(const ShiftSeriesOperator& op, complex S, const SeriesConfig& cfg = {})
{
    const complex arg = op.eta_argument(S);
    if (!(arg.real() > 0.0)) {
        std::ostringstream msg;
        msg << "shift-series eigenvalue: Re[p - beta + alpha S] = " << arg.real() << " must be > 0";
        throw StripViolation(msg.str());
    }
    return eta_series(EvalPoint::from(arg), cfg);
}

// Terms needed by shift_series_apply_numeric for about 1e-12 at this argument.
inline std::int64_t recommended_terms(complex eta_arg) noexcept
{
    return static_cast<std::int64_t>(std::ceil(4.0 * std::abs(eta_arg))) + 200;
}

// Number of averaging passes applied to the trailing partial sums.
inline constexpr int numeric_averaging_passes = 60;

// Applies the operator to f(y) = y^(-S) term by term, each exponential shift evaluated as
// the dilation f(n^alpha x), and returns (O f)(x) / f(x). The partial sums are
// accelerated by repeated averaging (Euler-van Wijngaarden), which is independent of
// the weights used by eta_series.
inline complex shift_series_apply_numeric(const ShiftSeriesOperator& op, complex S, double x, std::int64_t terms,
                                          double tolerance = 1e-10)
{
    if (!op.converges_on(S)) {
        std::ostringstream msg;
        msg << "shift_series_apply_numeric: Re[p - beta + alpha S] = " << op.eta_argument(S).real()
            << " must be > 0";
        throw StripViolation(msg.str());
    }
    if (terms < 2) {
        throw DomainError("shift_series_apply_numeric: need at least 2 terms");
    }
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw DomainError("shift_series_apply_numeric: x must be a positive real");
    }

    const auto f = [S](double y) { return std::exp(-S * std::log(y)); };
    const int passes = static_cast<int>(std::min<std::int64_t>(numeric_averaging_passes, terms - 1));
    const double alpha = static_cast<double>(op.alpha);

    std::vector<complex> tail;
    tail.reserve(static_cast<std::size_t>(passes) + 1);
    complex partial{};
    for (std::int64_t n = 1; n <= terms; ++n) {
        const double ln_n = std::log(static_cast<double>(n));
        const double dilated = std::exp(alpha * ln_n) * x;
        const complex term = std::exp((op.beta - op.n_power) * ln_n) * f(dilated);
        partial += (n % 2 == 1) ? term : -term;
        if (n > terms - passes - 1) {
            tail.push_back(partial);
        }
    }

    complex previous = tail.front();
    for (int pass = 0; pass < passes; ++pass) {
        previous = tail.front();
        for (std::size_t i = 0; i + 1 < tail.size(); ++i) {
            tail[i] = 0.5 * (tail[i] + tail[i + 1]);
        }
        tail.pop_back();
    }
    const complex value = tail.front();
    const double change = std::abs(value - previous);
    if (passes > 0 && change > tolerance * std::max(1.0, std::abs(value))) {
        std::ostringstream msg;
        msg << "shift_series_apply_numeric: averaging did not settle (last change " << change << ") with " << terms
            << " terms";
        throw ConvergenceError(msg.str());
    }
    return value / f(x);
}

inline complex shift_series_apply_numeric(const ShiftSeriesOperator& op, complex S, double x = 1.0)
{
    return shift_series_apply_numeric(op, S, x, recommended_terms(op.eta_argument(S)));
}

namespace detail {

inline void require_strip(double sigma, Branch branch, const char* who)
{
    if (branch == Branch::minus && !(sigma > 0.0)) {
        std::ostringstream msg;
        msg << who << ": branch minus needs sigma > 0 (Re[S - S0] > 0), got sigma = " << sigma;
        throw StripViolation(msg.str());
    }
    if (branch == Branch::plus && !(sigma < 1.0)) {
        std::ostringstream msg;
        msg << who << ": branch plus needs sigma < 1 (Re[S + S0] < 1), got sigma = " << sigma;
        throw StripViolation(msg.str());
    }
}

} // namespace detail

// O_DK- x^(-s) = (1 - 2^(1-s)) zeta(s) x^(-s),    Re s > 0
// O_DK+ x^(-s) = (1 - 2^s) zeta(1 - s) x^(-s),    Re s < 1
inline complex dk_eigenvalue(const EvalPoint& s, Branch branch, const SeriesConfig& cfg = {})
{
    detail::require_strip(s.sigma(), branch, "dk_eigenvalue");
    const ShiftSeriesOperator op = branch == Branch::minus ? operators::dk_minus() : operators::dk_plus();
    return shift_series_eigenvalue(op, s.value(), cfg);
}

// Eigenvalues of O1+- on x^(-sigma + i rho) with S0 = i rho0.
inline complex om1_eigenvalue(double sigma, double rho, double rho0, Branch branch, const SeriesConfig& cfg = {})
{
    detail::require_strip(sigma, branch, "om1_eigenvalue");
    const complex s0{0.0, rho0};
    const ShiftSeriesOperator op = branch == Branch::minus ? operators::om1_minus(s0) : operators::om1_plus(s0);
    return shift_series_eigenvalue(op, complex{sigma, -rho}, cfg);
}

// Eigenvalues of O_OM2+- on x^(-sigma + i rho); both depend on rho - rho0 only.
inline complex om2_eigenvalue(double sigma, double rho, double rho0, Branch branch, const SeriesConfig& cfg = {})
{
    detail::require_strip(sigma, branch, "om2_eigenvalue");
    const complex s0{0.0, rho0};
    const ShiftSeriesOperator op = branch == Branch::minus ? operators::om2_minus(s0) : operators::om2_plus(s0);
    return shift_series_eigenvalue(op, complex{sigma, -rho}, cfg);
}

enum class ModelKind { DK, OM1, OM2 };

inline const char* to_string(ModelKind k) noexcept
{
    switch (k) {
    case ModelKind::DK:
        return "dk";
    case ModelKind::OM1:
        return "om1";
    case ModelKind::OM2:
        break;
    }
    return "om2";
}

struct HamiltonianModel {
    ModelKind kind = ModelKind::OM2;
    double rho0 = 0.0;  // S0 = i rho0
    double omega = 0.0; // dressing |x|^(+-i omega/2)

    void validate() const
    {
        if (!std::isfinite(rho0) || !std::isfinite(omega)) {
            throw ConfigError("HamiltonianModel: rho0 and omega must be finite");
        }
        if (kind == ModelKind::DK && rho0 != 0.0) {
            throw ConfigError("HamiltonianModel: the DK model has no rho0 parameter");
        }
    }
};

// Critical-line shift mu = rho - rho0 +- omega/2.
inline double critical_shift(double rho, double rho0, double omega, Branch branch) noexcept
{
    return (rho - rho0) + branch_sign(branch) * (omega / 2.0);
}

namespace detail {

// (1 - 2^(1/2 - i a)) zeta(1/2 + i a), i.e. eta(1/2 + i a), written through the prefactor
// and zeta_strip the way the Hamiltonian spectra are stated.
inline complex critical_eta_factor(double a, const SeriesConfig& cfg)
{
    const EvalPoint s{0.5, a};
    return prefactor(s) * zeta_strip(s, StripSide::right_of_zero, cfg);
}

} // namespace detail

// Eigenvalue of H^(+-) on |x|^(-1/2 + i rho).
//   OM1: (1 - 2^(1/2 - i a))(1 - 2^(1/2 + i b)) zeta(1/2 + i a) zeta(1/2 - i b)
//        a = rho - rho0 +- omega/2, b = rho + rho0 +- omega/2
//   OM2: |1 - 2^(1/2 + i mu)|^2 |zeta(1/2 + i mu)|^2, mu = rho - rho0 +- omega/2
//   DK:  OM1 at rho0 = 0
inline complex hamiltonian_eigenvalue(const HamiltonianModel& model, double rho, Branch branch,
                                      const SeriesConfig& cfg = {})
{
    model.validate();
    const double sign = branch_sign(branch);
    switch (model.kind) {
    case ModelKind::OM2: {
        const double mu = critical_shift(rho, model.rho0, model.omega, branch);
        const EvalPoint s{0.5, mu};
        const double z = std::abs(zeta_strip(s, StripSide::right_of_zero, cfg));
        const double pref = std::abs(1.0 - std::exp(complex{0.5, mu} * std::numbers::ln2));
        return {pref * pref * z * z, 0.0};
    }
    case ModelKind::DK:
    case ModelKind::OM1:
        break;
    }
    const double rho0 = model.kind == ModelKind::DK ? 0.0 : model.rho0;
    const double a = (rho - rho0) + sign * (model.omega / 2.0);
    const double b = (rho + rho0) + sign * (model.omega / 2.0);
    // (1 - 2^(1/2 + i b)) zeta(1/2 - i b) = eta(1/2 - i b)
    return detail::critical_eta_factor(a, cfg) * detail::critical_eta_factor(-b, cfg);
}

// The two eta factors of the OM1 (or DK) product, for checking which one vanishes.
inline std::array<complex, 2> om1_hamiltonian_factors(const HamiltonianModel& model, double rho, Branch branch,
                                                      const SeriesConfig& cfg = {})
{
    model.validate();
    const double rho0 = model.kind == ModelKind::DK ? 0.0 : model.rho0;
    const double sign = branch_sign(branch);
    const double a = (rho - rho0) + sign * (model.omega / 2.0);
    const double b = (rho + rho0) + sign * (model.omega / 2.0);
    return {detail::critical_eta_factor(a, cfg), detail::critical_eta_factor(-b, cfg)};
}

// An operator sandwiched between two multiplications by x^dress.
struct DressedOperator {
    ShiftSeriesOperator core;
    complex dress; // multiply by x^dress before and after
};

// H- = A+ A-, H+ = A- A+, with A-(omega) = |x|^(-i omega/2) O- |x|^(-i omega/2) and
// A+(omega) = |x|^(i omega/2) O+ |x|^(i omega/2). Returned in application order.
inline std::array<DressedOperator, 2> hamiltonian_factors(const HamiltonianModel& model, Branch branch)
{
    model.validate();
    const complex s0{0.0, model.rho0};
    ShiftSeriesOperator lower{};
    ShiftSeriesOperator raise{};
    switch (model.kind) {
    case ModelKind::DK:
        lower = operators::dk_minus();
        raise = operators::dk_plus();
        break;
    case ModelKind::OM1:
        lower = operators::om1_minus(s0);
        raise = operators::om1_plus(s0);
        break;
    case ModelKind::OM2:
        lower = operators::om2_minus(s0);
        raise = operators::om2_plus(s0);
        break;
    }
    const DressedOperator a_minus{lower, complex{0.0, -model.omega / 2.0}};
    const DressedOperator a_plus{raise, complex{0.0, model.omega / 2.0}};
    if (branch == Branch::minus) {
        return {a_minus, a_plus};
    }
    return {a_plus, a_minus};
}

// Applies the dressed factors to x^(-S) with the given scalar evaluator for the core
// operators; returns the accumulated eigenvalue and checks the monomial is restored.
template <class Evaluator>
complex apply_dressed_chain(const std::array<DressedOperator, 2>& chain, complex S, Evaluator&& eval)
{
    complex value{1.0, 0.0};
    complex exponent = S;
    for (const DressedOperator& f : chain) {
        exponent -= f.dress;
        value *= eval(f.core, exponent);
        exponent -= f.dress;
    }
    if (std::abs(exponent - S) > 1e-12 * std::max(1.0, std::abs(S))) {
        throw DomainError("apply_dressed_chain: chain does not map the monomial to itself");
    }
    return value;
}

// Hamiltonian eigenvalue by composing the factor operators, each evaluated as a sum over
// dilations. Independent of the closed forms in hamiltonian_eigenvalue.
inline complex hamiltonian_eigenvalue_numeric(const HamiltonianModel& model, double rho, Branch branch, double x = 1.0)
{
    const auto chain = hamiltonian_factors(model, branch);
    return apply_dressed_chain(chain, complex{0.5, -rho}, [x](const ShiftSeriesOperator& op, complex S) {
        return shift_series_apply_numeric(op, S, x);
    });
}

} // namespace susyzeta

#endif
