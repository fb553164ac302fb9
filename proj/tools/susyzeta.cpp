#include <susyzeta/app.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <string>

namespace {

using namespace susyzeta;

void add_format_flags(CLI::App* cmd, app::RunConfig& cfg, std::string& output, const char* default_format)
{
    static const std::map<std::string, app::OutputFormat> formats{{"csv", app::OutputFormat::csv},
                                                                  {"json", app::OutputFormat::json}};
    cmd->add_option("--format", cfg.format, std::string("Output format: csv or json (default ") + default_format + ")")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    cmd->add_option("-o,--output", output, "Write results to this file instead of stdout");
}

void add_model_flags(CLI::App* cmd, app::RunConfig& cfg)
{
    static const std::map<std::string, ModelKind> models{
        {"dk", ModelKind::DK}, {"om1", ModelKind::OM1}, {"om2", ModelKind::OM2}};
    static const std::map<std::string, Branch> branches{{"minus", Branch::minus}, {"plus", Branch::plus}};
    cmd->add_option("--model", cfg.model.kind, "Operator family: dk, om1 or om2")
        ->transform(CLI::CheckedTransformer(models, CLI::ignore_case))
        ->capture_default_str();
    cmd->add_flag("--hamiltonian", cfg.hamiltonian, "Evaluate the Hamiltonian instead of the shift-series operator");
    cmd->add_option("--sigma", cfg.sigma, "Real part of the exponent (ignored for --hamiltonian)")->capture_default_str();
    cmd->add_option("--rho", cfg.rho, "Imaginary part rho of the exponent")->capture_default_str();
    cmd->add_option("--rho0,--s0-imag", cfg.model.rho0, "Seed exponent S0 = i*rho0")->capture_default_str();
    cmd->add_option("--omega", cfg.model.omega, "Dilation shift omega of the Hamiltonian")->capture_default_str();
    cmd->add_option("--branch", cfg.branch, "Partner branch: minus or plus")
        ->transform(CLI::CheckedTransformer(branches, CLI::ignore_case))
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv)
{
    app::RunConfig cfg;
    cfg.threads = thread_count();
    cfg.model.rho0 = 0.0;
    std::string output;

    CLI::App cli{"Zeta zeros, XP-like spectral models and SUSY partner potentials"};
    cli.set_config("--config", "", "Read options from a TOML/INI file (keys as flags)");
    cli.require_subcommand(1);

    auto* zeros = cli.add_subcommand("zeros", "Locate zeros of zeta(1/2 + i lambda) in a range");
    zeros->add_option("--min", cfg.search.lambda_min, "Lower end of the lambda range")->capture_default_str();
    zeros->add_option("--max", cfg.search.lambda_max, "Upper end of the lambda range")->capture_default_str();
    zeros->add_option("--step", cfg.search.scan_step, "Scan step")->capture_default_str();
    zeros->add_option("--refine-tol", cfg.search.refine_tolerance, "Final bracket width")->capture_default_str();
    zeros->add_option("--residual", cfg.search.residual_threshold, "Acceptance threshold on |zeta|")
        ->capture_default_str();
    add_format_flags(zeros, cfg, output, "csv");

    auto* eigen = cli.add_subcommand("eigen", "Closed-form eigenvalue of a spectral model on a monomial");
    add_model_flags(eigen, cfg);
    add_format_flags(eigen, cfg, output, "csv");

    auto* potentials = cli.add_subcommand("potentials", "Emit partner potential profiles for S0 = i*rho0");
    double rho0_potentials = 1.0;
    potentials->add_option("--rho0,--s0-imag", rho0_potentials, "Seed exponent S0 = i*rho0")->capture_default_str();
    potentials->add_option("--xmin", cfg.grid.x_min, "Left end of the x grid")->capture_default_str();
    potentials->add_option("--xmax", cfg.grid.x_max, "Right end of the x grid")->capture_default_str();
    potentials->add_option("--n", cfg.grid.n_points, "Number of grid points")->capture_default_str();
    add_format_flags(potentials, cfg, output, "csv");

    auto* verify_cmd = cli.add_subcommand("verify", "Run the verification suites");
    verify_cmd
        ->add_option("--suite", cfg.suites,
                     "Suite to run (repeatable): factorization, intertwining, quadratic, confluent, series")
        ->check(CLI::IsMember(verify::suite_names()));
    verify_cmd->add_option("--seed", cfg.seed, "Seed for randomized checks")->capture_default_str();
    verify_cmd->add_option("--perturb", cfg.perturb, "Relative perturbation of the partner coupling (test hook)")
        ->capture_default_str();
    add_format_flags(verify_cmd, cfg, output, "json");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return cli.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return cli.exit(e);
    } catch (const CLI::ParseError& e) {
        cli.exit(e);
        return app::config_error;
    }

    if (zeros->parsed()) {
        cfg.command = app::Command::zeros;
    } else if (eigen->parsed()) {
        cfg.command = app::Command::eigen;
    } else if (potentials->parsed()) {
        cfg.command = app::Command::potentials;
        cfg.model.rho0 = rho0_potentials;
    } else {
        cfg.command = app::Command::verify;
    }

    if (output.empty()) {
        return app::run(cfg, std::cout, std::cerr);
    }
    std::ofstream file(output);
    if (!file) {
        std::cerr << "error: cannot open " << output << " for writing\n";
        return app::config_error;
    }
    return app::run(cfg, file, std::cerr);
}
