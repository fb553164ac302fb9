#ifndef SUSYZETA_ZEROS_HPP
#define SUSYZETA_ZEROS_HPP

// Critical-line zeros of zeta by scan and golden-section refinement of |zeta(1/2 + i lambda)|^2,
// each certified as a zero-energy mode of the model Hamiltonians.
//
// Only zeros on the critical line are visible to this search.

#include <susyzeta/errors.hpp>
#include <susyzeta/parallel.hpp>
#include <susyzeta/spectral.hpp>
#include <susyzeta/zeta.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <vector>

namespace susyzeta {

struct ZeroSearchConfig {
    double lambda_min = 10.0;
    double lambda_max = 50.0;
    double scan_step = 0.05;
    double refine_tolerance = 1e-8;
    double residual_threshold = 1e-6;
    // Grid minima of |zeta| above this are not bracketed.
    double coarse_threshold = 0.5;
    SeriesConfig series{};

    void validate() const
    {
        if (!std::isfinite(lambda_min) || !std::isfinite(lambda_max)) {
            throw ConfigError("ZeroSearchConfig: range must be finite");
        }
        if (lambda_min > lambda_max) {
            std::ostringstream msg;
            msg << "ZeroSearchConfig: lambda_min = " << lambda_min << " exceeds lambda_max = " << lambda_max;
            throw ConfigError(msg.str());
        }
        if (!(scan_step > 0.0) || !std::isfinite(scan_step)) {
            throw ConfigError("ZeroSearchConfig: scan_step must be positive");
        }
        if (!(refine_tolerance > 0.0) || !(residual_threshold > 0.0) || !(coarse_threshold > 0.0)) {
            throw ConfigError("ZeroSearchConfig: tolerances and thresholds must be positive");
        }
        series.validate();
    }
};

struct Bracket {
    double lo;
    double hi;

    friend bool operator==(const Bracket&, const Bracket&) = default;
};

struct ZeroRecord {
    double lambda_star;
    double zeta_residual;        // |zeta(1/2 + i lambda*)|
    double hamiltonian_residual; // H_OM2 eigenvalue at mu = lambda*
    Bracket bracket;

    friend bool operator==(const ZeroRecord&, const ZeroRecord&) = default;
};

inline double zeta_modulus_on_line(double lambda, const SeriesConfig& cfg = {})
{
    return std::abs(zeta_critical(lambda, cfg));
}

// Brackets (lambda_{i-1}, lambda_{i+1}) around strict interior minima lambda_i of the
// scanned |zeta| that fall below the coarse threshold.
inline std::vector<Bracket> scan_zero_candidates(const ZeroSearchConfig& cfg, unsigned threads = 1)
{
    cfg.validate();
    const double span = cfg.lambda_max - cfg.lambda_min;
    const auto steps = static_cast<std::size_t>(std::floor(span / cfg.scan_step + 1e-9));
    if (steps < 2) {
        return {};
    }
    const std::size_t count = steps + 1;
    std::vector<double> lambda(count);
    std::vector<double> modulus(count);
    for (std::size_t i = 0; i < count; ++i) {
        lambda[i] = cfg.lambda_min + static_cast<double>(i) * cfg.scan_step;
    }
    parallel_for(count, threads, [&](std::size_t i) { modulus[i] = zeta_modulus_on_line(lambda[i], cfg.series); });

    std::vector<Bracket> brackets;
    for (std::size_t i = 1; i + 1 < count; ++i) {
        if (modulus[i] < modulus[i - 1] && modulus[i] < modulus[i + 1] && modulus[i] < cfg.coarse_threshold) {
            brackets.push_back({lambda[i - 1], lambda[i + 1]});
        }
    }
    return brackets;
}

// H_OM2 eigenvalue with rho = lambda, rho0 = omega = 0 (so mu = lambda).
inline double om2_zero_energy(double lambda, const SeriesConfig& cfg = {})
{
    return hamiltonian_eigenvalue({ModelKind::OM2, 0.0, 0.0}, lambda, Branch::minus, cfg).real();
}

inline ZeroRecord refine_zero(const Bracket& bracket, const ZeroSearchConfig& cfg)
{
    cfg.validate();
    if (!(bracket.lo < bracket.hi)) {
        throw ConfigError("refine_zero: bracket must satisfy lo < hi");
    }
    const auto objective = [&](double lambda) {
        const double m = zeta_modulus_on_line(lambda, cfg.series);
        return m * m;
    };

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = bracket.lo;
    double b = bracket.hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    while (b - a > cfg.refine_tolerance) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
        }
    }
    const double lambda_star = 0.5 * (a + b);
    const double residual = zeta_modulus_on_line(lambda_star, cfg.series);
    if (!(residual <= cfg.residual_threshold)) {
        std::ostringstream msg;
        msg << "refine_zero: minimum |zeta| = " << residual << " at lambda = " << lambda_star << " in ["
            << bracket.lo << ", " << bracket.hi << "] exceeds threshold " << cfg.residual_threshold;
        throw NotAZero(msg.str(), lambda_star, residual);
    }
    return {lambda_star, residual, om2_zero_energy(lambda_star, cfg.series), bracket};
}

struct ZeroSearchResult {
    std::vector<ZeroRecord> zeros;      // sorted by lambda
    std::vector<NotAZero> rejections;   // sorted by lambda
};

inline ZeroSearchResult locate_zeros(const ZeroSearchConfig& cfg, unsigned threads = 1)
{
    const std::vector<Bracket> brackets = scan_zero_candidates(cfg, threads);
    std::vector<std::optional<ZeroRecord>> found(brackets.size());
    std::vector<std::optional<NotAZero>> rejected(brackets.size());
    parallel_for(brackets.size(), threads, [&](std::size_t i) {
        try {
            found[i] = refine_zero(brackets[i], cfg);
        } catch (const NotAZero& e) {
            rejected[i] = e;
        }
    });
    ZeroSearchResult result;
    for (std::size_t i = 0; i < brackets.size(); ++i) {
        if (found[i]) {
            result.zeros.push_back(*found[i]);
        }
        if (rejected[i]) {
            result.rejections.push_back(*rejected[i]);
        }
    }
    std::sort(result.zeros.begin(), result.zeros.end(),
              [](const ZeroRecord& x, const ZeroRecord& y) { return x.lambda_star < y.lambda_star; });
    std::sort(result.rejections.begin(), result.rejections.end(),
              [](const NotAZero& x, const NotAZero& y) { return x.lambda < y.lambda; });
    return result;
}

// A split of lambda* into (rho, rho0, omega) with rho - rho0 +- omega/2 = lambda*.
struct Decomposition {
    double rho;
    double rho0;
    double omega;
    Branch branch;
};

inline Decomposition decompose(double mu, double rho0, double omega, Branch branch) noexcept
{
    return {mu + rho0 - branch_sign(branch) * (omega / 2.0), rho0, omega, branch};
}

// Small sample of decompositions; rho0 and omega are dyadic so the shift is exact.
inline std::vector<Decomposition> default_decompositions(double lambda)
{
    std::vector<Decomposition> out;
    for (double rho0 : {0.0, 1.0, -2.5}) {
        for (double omega : {0.0, 2.0, -3.0}) {
            for (Branch branch : {Branch::minus, Branch::plus}) {
                out.push_back(decompose(lambda, rho0, omega, branch));
            }
        }
    }
    return out;
}

struct ZeroModeEntry {
    Decomposition decomposition;
    double residual; // |H eigenvalue|
};

struct ZeroModeReport {
    ModelKind kind;
    double threshold;
    double max_residual;
    bool passed;
    std::vector<ZeroModeEntry> entries;
};

// Evaluates the model Hamiltonian at decompositions of z.lambda_star. For OM2 the residual
// must stay below residual_threshold^2, for OM1 and DK (whose second zeta factor stays
// finite) below residual_threshold. DK only admits rho0 = 0.
inline ZeroModeReport verify_zero_mode(const ZeroRecord& z, ModelKind kind, double residual_threshold = 1e-6,
                                       const std::vector<Decomposition>& decompositions = {},
                                       const SeriesConfig& cfg = {})
{
    std::vector<Decomposition> sample =
        decompositions.empty() ? default_decompositions(z.lambda_star) : decompositions;
    if (kind == ModelKind::DK) {
        std::erase_if(sample, [](const Decomposition& d) { return d.rho0 != 0.0; });
    }
    ZeroModeReport report{kind, kind == ModelKind::OM2 ? residual_threshold * residual_threshold : residual_threshold,
                          0.0, true, {}};
    for (const Decomposition& d : sample) {
        const HamiltonianModel model{kind, d.rho0, d.omega};
        const double r = std::abs(hamiltonian_eigenvalue(model, d.rho, d.branch, cfg));
        report.entries.push_back({d, r});
        report.max_residual = std::max(report.max_residual, r);
    }
    report.passed = report.max_residual <= report.threshold;
    return report;
}

} // namespace susyzeta

#endif
