#ifndef SUSYZETA_APP_HPP
#define SUSYZETA_APP_HPP

// The four commands behind the susyzeta executable. Each writes its table or report to
// `out`, diagnostics to `log`, and returns the process exit code:
//   0 success, 1 configuration error, 2 some zero brackets rejected, 3 verification failure.

#include <susyzeta/errors.hpp>
#include <susyzeta/grid_lab.hpp>
#include <susyzeta/io.hpp>
#include <susyzeta/parallel.hpp>
#include <susyzeta/spectral.hpp>
#include <susyzeta/susy.hpp>
#include <susyzeta/verify.hpp>
#include <susyzeta/zeros.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace susyzeta::app {

enum ExitCode : int { ok = 0, config_error = 1, zeros_rejected = 2, verification_failed = 3 };

enum class Command { zeros, eigen, potentials, verify };
enum class OutputFormat { csv, json };

struct RunConfig {
    Command command = Command::zeros;

    // eigen
    HamiltonianModel model{};
    bool hamiltonian = false;
    double sigma = 0.5;
    double rho = 0.0;
    Branch branch = Branch::minus;

    ZeroSearchConfig search{};

    // potentials: x range and sampling
    grid::GridSpec<double> grid{0.1, 5.0, 200, grid::Spacing::uniform};

    // verify
    std::vector<std::string> suites;
    std::uint64_t seed = 20240917;
    double perturb = 0.0;

    std::optional<OutputFormat> format;
    unsigned threads = 1;
};

inline const char* to_string(Command c)
{
    switch (c) {
    case Command::zeros:
        return "zeros";
    case Command::eigen:
        return "eigen";
    case Command::potentials:
        return "potentials";
    case Command::verify:
        break;
    }
    return "verify";
}

namespace detail {

using json = nlohmann::json;

inline json envelope(Command c, json parameters, json results, json checks = json::array())
{
    return {{"command", to_string(c)}, {"parameters", std::move(parameters)}, {"results", std::move(results)},
            {"checks", std::move(checks)}};
}

} // namespace detail

inline int cmd_zeros(const RunConfig& cfg, std::ostream& out, std::ostream& log)
{
    ZeroSearchResult result;
    try {
        cfg.search.validate();
        result = locate_zeros(cfg.search, cfg.threads);
    } catch (const ConfigError& e) {
        log << "error: " << e.what() << '\n';
        return config_error;
    }
    for (const NotAZero& r : result.rejections) {
        log << "rejected: " << r.what() << '\n';
    }
    if (cfg.format.value_or(OutputFormat::csv) == OutputFormat::csv) {
        io::write_zeros_csv(out, result.zeros);
    } else {
        const auto& s = cfg.search;
        detail::json rejected = detail::json::array();
        for (const NotAZero& r : result.rejections) {
            rejected.push_back({{"lambda", r.lambda}, {"zeta_residual", r.residual}});
        }
        detail::json checks = detail::json::array();
        for (const ZeroRecord& z : result.zeros) {
            checks.push_back({{"name", "zeta residual"},
                              {"lambda", z.lambda_star},
                              {"tolerance", s.residual_threshold},
                              {"measured", z.zeta_residual},
                              {"passed", z.zeta_residual <= s.residual_threshold}});
        }
        out << detail::envelope(Command::zeros,
                                {{"lambda_min", s.lambda_min},
                                 {"lambda_max", s.lambda_max},
                                 {"scan_step", s.scan_step},
                                 {"refine_tolerance", s.refine_tolerance},
                                 {"residual_threshold", s.residual_threshold}},
                                {{"zeros", io::zeros_to_json(result.zeros)}, {"rejected", rejected}}, checks)
                   .dump(2)
            << '\n';
    }
    return result.rejections.empty() ? ok : zeros_rejected;
}

inline int cmd_eigen(const RunConfig& cfg, std::ostream& out, std::ostream& log)
{
    complex value;
    std::string formula;
    const HamiltonianModel& m = cfg.model;
    try {
        m.validate();
        if (cfg.hamiltonian) {
            if (cfg.sigma != 0.5) {
                log << "note: Hamiltonian eigenvalues are taken on |x|^(-1/2 + i rho); sigma is ignored\n";
            }
            value = hamiltonian_eigenvalue(m, cfg.rho, cfg.branch);
            formula = m.kind == ModelKind::OM2 ? "|1 - 2^(1/2 + i mu)|^2 |zeta(1/2 + i mu)|^2, mu = rho - rho0 +- omega/2"
                                               : "(1 - 2^(1/2 - i a))(1 - 2^(1/2 + i b)) zeta(1/2 + i a) zeta(1/2 - i b), "
                                                 "a = rho - rho0 +- omega/2, b = rho + rho0 +- omega/2";
        } else {
            switch (m.kind) {
            case ModelKind::DK:
                value = dk_eigenvalue(EvalPoint{cfg.sigma, -cfg.rho}, cfg.branch);
                formula = cfg.branch == Branch::minus ? "(1 - 2^(1-s)) zeta(s), s = sigma - i rho"
                                                      : "(1 - 2^s) zeta(1-s), s = sigma - i rho";
                break;
            case ModelKind::OM1:
                value = om1_eigenvalue(cfg.sigma, cfg.rho, m.rho0, cfg.branch);
                formula = cfg.branch == Branch::minus ? "(1 - 2^(1 - sigma + i(rho + rho0))) zeta(sigma - i(rho + rho0))"
                                                      : "(1 - 2^(sigma - i(rho - rho0))) zeta(1 - sigma + i(rho - rho0))";
                break;
            case ModelKind::OM2:
                value = om2_eigenvalue(cfg.sigma, cfg.rho, m.rho0, cfg.branch);
                formula = cfg.branch == Branch::minus ? "(1 - 2^(1 - sigma + i(rho - rho0))) zeta(sigma - i(rho - rho0))"
                                                      : "(1 - 2^(sigma - i(rho - rho0))) zeta(1 - sigma + i(rho - rho0))";
                break;
            }
        }
    } catch (const StripViolation& e) {
        log << "error: " << e.what() << '\n';
        return config_error;
    } catch (const ConfigError& e) {
        log << "error: " << e.what() << '\n';
        return config_error;
    } catch (const Error& e) {
        log << "error: " << e.what() << '\n';
        return config_error;
    }

    const double sigma = cfg.hamiltonian ? 0.5 : cfg.sigma;
    if (cfg.format.value_or(OutputFormat::csv) == OutputFormat::csv) {
        out << "model,operator,branch,sigma,rho,rho0,omega,re,im\n"
            << to_string(m.kind) << ',' << (cfg.hamiltonian ? "hamiltonian" : "shift_series") << ','
            << to_string(cfg.branch) << ',' << io::format_real(sigma) << ',' << io::format_real(cfg.rho) << ','
            << io::format_real(m.rho0) << ',' << io::format_real(m.omega) << ',' << io::format_real(value.real())
            << ',' << io::format_real(value.imag()) << '\n';
    } else {
        out << detail::envelope(Command::eigen,
                                {{"model", to_string(m.kind)},
                                 {"operator", cfg.hamiltonian ? "hamiltonian" : "shift_series"},
                                 {"branch", to_string(cfg.branch)},
                                 {"sigma", sigma},
                                 {"rho", cfg.rho},
                                 {"rho0", m.rho0},
                                 {"omega", m.omega},
                                 {"formula", formula}},
                                {{"eigenvalue", io::complex_to_json(value)}})
                   .dump(2)
            << '\n';
    }
    return ok;
}

inline int cmd_potentials(const RunConfig& cfg, std::ostream& out, std::ostream& log)
{
    PotentialTable table;
    try {
        const SeedExponent seed = SeedExponent::imaginary(cfg.model.rho0);
        const std::vector<double> x = cfg.grid.points();
        table = potential_profile(first_order_transform(seed), confluent_transform(seed), x);
    } catch (const Error& e) {
        log << "error: " << e.what() << '\n';
        return config_error;
    }
    if (cfg.format.value_or(OutputFormat::csv) == OutputFormat::csv) {
        io::write_potentials_csv(out, table);
    } else {
        out << detail::envelope(Command::potentials,
                                {{"rho0", cfg.model.rho0},
                                 {"x_min", cfg.grid.x_min},
                                 {"x_max", cfg.grid.x_max},
                                 {"n", cfg.grid.n_points},
                                 {"spacing", io::to_string(cfg.grid.spacing)}},
                                io::potentials_to_json(table))
                   .dump(2)
            << '\n';
    }
    return ok;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& log)
{
    verify::Options opt;
    opt.suites = cfg.suites;
    opt.seed = cfg.seed;
    opt.perturb = cfg.perturb;
    opt.threads = cfg.threads;
    std::vector<verify::Check> checks;
    try {
        checks = verify::run(opt);
    } catch (const ConfigError& e) {
        log << "error: " << e.what() << '\n';
        return config_error;
    }
    bool all = true;
    for (const verify::Check& c : checks) {
        all = all && c.passed;
        if (!c.passed) {
            log << "FAILED " << c.suite << ": " << c.name << " (measured " << c.measured << ", tolerance "
                << c.tolerance << ")\n";
        }
    }
    if (cfg.format.value_or(OutputFormat::json) == OutputFormat::csv) {
        out << "suite,check,tolerance,measured,passed\n";
        for (const verify::Check& c : checks) {
            out << c.suite << ",\"" << c.name << "\"," << io::format_real(c.tolerance) << ','
                << io::format_real(c.measured) << ',' << (c.passed ? "true" : "false") << '\n';
        }
    } else {
        detail::json arr = detail::json::array();
        for (const verify::Check& c : checks) {
            arr.push_back({{"suite", c.suite},
                           {"name", c.name},
                           {"tolerance", c.tolerance},
                           {"measured", c.measured},
                           {"passed", c.passed}});
        }
        detail::json suites = detail::json::array();
        for (const std::string& s : verify::suite_names()) {
            if (verify::selected(opt, s)) {
                suites.push_back(s);
            }
        }
        out << detail::envelope(Command::verify, {{"suites", suites}, {"seed", opt.seed}, {"perturb", opt.perturb}},
                                {{"passed", all}}, arr)
                   .dump(2)
            << '\n';
    }
    return all ? ok : verification_failed;
}

inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& log)
{
    switch (cfg.command) {
    case Command::zeros:
        return cmd_zeros(cfg, out, log);
    case Command::eigen:
        return cmd_eigen(cfg, out, log);
    case Command::potentials:
        return cmd_potentials(cfg, out, log);
    case Command::verify:
        break;
    }
    return cmd_verify(cfg, out, log);
}

} // namespace susyzeta::app

#endif
