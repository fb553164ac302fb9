#ifndef SUSYZETA_ZETA_HPP
#define SUSYZETA_ZETA_HPP

// Dirichlet eta and Riemann zeta on the critical strip.
//
//   eta(s)    = sum_{n>=1} (-1)^(n+1) n^(-s)               Re s > 0
//   zeta(s)   = eta(s) / (1 - 2^(1-s))                     Re s > 0
//   zeta(1-s) = eta(1-s) / (1 - 2^s)                       Re s < 1
//
// The alternating series is summed either with the Cohen-Rodriguez Villegas-Zagier
// weights (geometric convergence, rate 3 + sqrt(8)) or, as a slow independent path,
// by compensated partial sums with an averaged final term.

#include <susyzeta/errors.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <sstream>

namespace susyzeta {

using complex = std::complex<double>;

class EvalPoint {
public:
    EvalPoint(double sigma, double lambda) : sigma_(sigma), lambda_(lambda)
    {
        if (!std::isfinite(sigma) || !std::isfinite(lambda)) {
            throw DomainError("EvalPoint: components must be finite");
        }
    }

    static EvalPoint from(complex s) { return {s.real(), s.imag()}; }

    double sigma() const noexcept { return sigma_; }
    double lambda() const noexcept { return lambda_; }
    complex value() const noexcept { return {sigma_, lambda_}; }

    // 1 - s; maps the left_of_one evaluation onto the right_of_zero one.
    EvalPoint reflected() const noexcept { return {1.0 - sigma_, -lambda_, unchecked{}}; }

    friend bool operator==(const EvalPoint&, const EvalPoint&) = default;

private:
    struct unchecked {};
    EvalPoint(double sigma, double lambda, unchecked) noexcept : sigma_(sigma), lambda_(lambda) {}

    double sigma_;
    double lambda_;
};

enum class Acceleration { direct_partial_sum, alternating_acceleration };

enum class StripSide { right_of_zero, left_of_one };

struct SeriesConfig {
    std::int64_t max_terms = 1'000'000;
    Acceleration acceleration = Acceleration::alternating_acceleration;
    double tail_tolerance = 1e-15;

    void validate() const
    {
        if (max_terms < 2) {
            throw ConfigError("SeriesConfig: max_terms must be >= 2");
        }
        if (!(tail_tolerance > 0.0) || !std::isfinite(tail_tolerance)) {
            throw ConfigError("SeriesConfig: tail_tolerance must be positive");
        }
    }
};

// |1 - 2^(1-s)| below this refuses the division in zeta_strip.
inline constexpr double singularity_guard = 1e-8;

// The accelerated weights are normalized by d_n ~ (3 + sqrt 8)^n, which overflows a
// double just above n = 400.
inline constexpr std::int64_t max_accelerated_terms = 400;

struct SeriesResult {
    complex value;
    double error_estimate;
    std::int64_t terms;
};

namespace detail {

// Neumaier summation, applied to each component.
class CompensatedSum {
public:
    void add(complex term) noexcept
    {
        add_component(re_, re_c_, term.real());
        add_component(im_, im_c_, term.imag());
    }
    complex value() const noexcept { return {re_ + re_c_, im_ + im_c_}; }

private:
    static void add_component(double& sum, double& c, double x) noexcept
    {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            c += (sum - t) + x;
        } else {
            c += (x - t) + sum;
        }
        sum = t;
    }

    double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

// n^(-s) on the principal branch.
inline complex inverse_power(double n, complex s) noexcept { return std::exp(-s * std::log(n)); }

// Truncation bound of the accelerated sum after n terms:
// 3 (1 + 2|t|) e^(pi |t| / 2) / (3 + sqrt 8)^n.
inline double accelerated_bound(double abs_lambda, std::int64_t n) noexcept
{
    const double log_rate = std::log(3.0 + std::sqrt(8.0));
    return std::exp(std::log(3.0 * (1.0 + 2.0 * abs_lambda)) + std::numbers::pi * abs_lambda / 2.0 -
                    log_rate * static_cast<double>(n));
}

inline std::int64_t accelerated_terms_for(double abs_lambda, double tolerance) noexcept
{
    const double log_rate = std::log(3.0 + std::sqrt(8.0));
    const double needed = (std::log(3.0 * (1.0 + 2.0 * abs_lambda)) + std::numbers::pi * abs_lambda / 2.0 -
                           std::log(tolerance)) /
                          log_rate;
    return std::max<std::int64_t>(2, static_cast<std::int64_t>(std::ceil(needed)) + 1);
}

inline SeriesResult eta_accelerated(complex s, double tolerance, std::int64_t max_terms)
{
    const double abs_lambda = std::abs(s.imag());
    const std::int64_t n = accelerated_terms_for(abs_lambda, tolerance);
    if (n > std::min(max_terms, max_accelerated_terms)) {
        std::ostringstream msg;
        msg << "eta_series: accelerated sum needs " << n << " terms at s = " << s
            << ", limit is " << std::min(max_terms, max_accelerated_terms);
        throw ConvergenceError(msg.str());
    }

    const double nd = static_cast<double>(n);
    double d = std::pow(3.0 + std::sqrt(8.0), nd);
    d = (d + 1.0 / d) / 2.0;
    double b = -1.0;
    double c = -d;
    CompensatedSum sum;
    for (std::int64_t k = 0; k < n; ++k) {
        const double kd = static_cast<double>(k);
        c = b - c;
        sum.add(c * inverse_power(kd + 1.0, s));
        b = (kd + nd) * (kd - nd) * b / ((kd + 0.5) * (kd + 1.0));
    }
    return {sum.value() / d, accelerated_bound(abs_lambda, n), n};
}

// Partial sum S_N plus half of the first omitted term. The remainder is then about
// |a'(N)| / 4 = |s| N^(-sigma-1) / 4; the estimate doubles it.
inline SeriesResult eta_direct(complex s, double tolerance, std::int64_t max_terms)
{
    const double abs_s = std::abs(s);
    const double sigma = s.real();
    const double by_tolerance = std::pow(abs_s / (2.0 * tolerance), 1.0 / (sigma + 1.0));
    const double needed = std::max(std::ceil(by_tolerance), std::ceil(2.0 * abs_s) + 8.0);
    if (!(needed <= static_cast<double>(max_terms))) {
        std::ostringstream msg;
        msg << "eta_series: direct partial sum needs about " << needed << " terms at s = " << s
            << ", limit is " << max_terms;
        throw ConvergenceError(msg.str());
    }
    const auto n = static_cast<std::int64_t>(needed);
    CompensatedSum sum;
    for (std::int64_t k = 1; k <= n; ++k) {
        const complex term = inverse_power(static_cast<double>(k), s);
        sum.add(k % 2 == 1 ? term : -term);
    }
    const complex next = inverse_power(static_cast<double>(n + 1), s);
    sum.add((n % 2 == 0 ? 0.5 : -0.5) * next);
    const double estimate = 0.5 * abs_s * std::pow(static_cast<double>(n), -sigma - 1.0);
    return {sum.value(), estimate, n + 1};
}

} // namespace detail

inline SeriesResult eta_series_detailed(const EvalPoint& s, const SeriesConfig& cfg = {})
{
    cfg.validate();
    if (!(s.sigma() > 0.0)) {
        std::ostringstream msg;
        msg << "eta_series: Re[s] = " << s.sigma() << " must be > 0";
        throw DomainError(msg.str());
    }
    switch (cfg.acceleration) {
    case Acceleration::direct_partial_sum:
        return detail::eta_direct(s.value(), cfg.tail_tolerance, cfg.max_terms);
    case Acceleration::alternating_acceleration:
        break;
    }
    return detail::eta_accelerated(s.value(), cfg.tail_tolerance, cfg.max_terms);
}

inline complex eta_series(const EvalPoint& s, const SeriesConfig& cfg = {})
{
    return eta_series_detailed(s, cfg).value;
}

// 1 - 2^(1-s), with 2^z = exp(z ln 2).
inline complex prefactor(const EvalPoint& s) noexcept
{
    return 1.0 - std::exp((1.0 - s.value()) * std::numbers::ln2);
}

namespace detail {

inline complex zeta_right_of_zero(const EvalPoint& s, const SeriesConfig& cfg, const char* label)
{
    if (!(s.sigma() > 0.0)) {
        std::ostringstream msg;
        msg << "zeta_strip(" << label << "): argument real part " << s.sigma() << " must be > 0";
        throw DomainError(msg.str());
    }
    const complex den = prefactor(s);
    if (std::abs(den) < singularity_guard) {
        // Zeros of 1 - 2^(1-s) sit at lambda = 2 pi k / ln 2; k = 0 is the pole.
        const double k = std::round(s.lambda() * std::numbers::ln2 / (2.0 * std::numbers::pi));
        std::ostringstream msg;
        msg << "zeta_strip(" << label << "): |1 - 2^(1-s)| = " << std::abs(den) << " at s = " << s.value();
        if (k == 0.0) {
            throw PoleError(msg.str() + " (pole of zeta)");
        }
        throw NearSingularDenominator(msg.str());
    }
    return eta_series(s, cfg) / den;
}

} // namespace detail

// right_of_zero: zeta(s) for Re s > 0.  left_of_one: zeta(1 - s) for Re s < 1.
inline complex zeta_strip(const EvalPoint& s, StripSide side, const SeriesConfig& cfg = {})
{
    switch (side) {
    case StripSide::right_of_zero:
        return detail::zeta_right_of_zero(s, cfg, "right_of_zero");
    case StripSide::left_of_one:
        break;
    }
    return detail::zeta_right_of_zero(s.reflected(), cfg, "left_of_one");
}

inline complex zeta_strip(const EvalPoint& s, const SeriesConfig& cfg = {})
{
    return zeta_strip(s, StripSide::right_of_zero, cfg);
}

// zeta(1/2 + i lambda).
inline complex zeta_critical(double lambda, const SeriesConfig& cfg = {})
{
    return zeta_strip(EvalPoint{0.5, lambda}, StripSide::right_of_zero, cfg);
}

} // namespace susyzeta

#endif
