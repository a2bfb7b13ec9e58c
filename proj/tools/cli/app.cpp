#include "cli/app.hpp"

#include <cstdlib>
#include <ostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "vring/errors.hpp"

namespace vring::cli {

RunConfig load_config_or_default(const std::string& path)
{
    if (path.empty()) return RunConfig{};
    return load_run_config(path);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"vring: vortex-ring axis alignment laboratory"};
    app.require_subcommand(1);

    SimulateOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Evaluate the axis field and MADC for a coefficient file");
    simulate->add_option("--config", sim.config, "Run configuration (key = value or JSON)");
    simulate->add_option("--coeffs", sim.coeffs, "Coefficient JSON file")->required();
    simulate->add_option("--out", sim.out, "Output directory")->required();
    simulate->add_option("--workers", sim.workers, "Threads across s-columns")->check(CLI::PositiveNumber);

    SimulateOptions base;
    base.baseline = true;
    auto* baseline = app.add_subcommand("baseline", "simulate with all coefficients zero");
    baseline->add_option("--config", base.config, "Run configuration");
    baseline->add_option("--out", base.out, "Output directory")->required();
    baseline->add_option("--workers", base.workers, "Threads across s-columns")->check(CLI::PositiveNumber);

    OptimizeOptions opt;
    auto* optimize = app.add_subcommand("optimize", "Search coefficients: quasi-Monte Carlo then refinement");
    optimize->add_option("--config", opt.config, "Run configuration");
    optimize->add_option("--study", opt.study, "Study directory (log, summary, best coefficients)")->required();
    optimize->add_option("--trials-qmc", opt.trials_qmc, "Quasi-Monte Carlo trials (default 10000)");
    optimize->add_option("--trials-refine", opt.trials_refine, "Refinement trials (default 50)");
    optimize->add_option("--seed", opt.seed, "Seed (VAL_SEED overrides)");
    optimize->add_option("--parallel", opt.parallel, "Concurrent trial evaluations");
    optimize->add_option("--strategy", opt.strategy, "perturb_best or density_ratio");
    optimize->add_option("--max-trials", opt.max_trials, "Stop after this many new trials in this invocation");
    optimize->add_flag("--record-elapsed", opt.record_elapsed, "Log measured wall time per trial");

    RenderOptions ren;
    auto* render = app.add_subcommand("render", "Draw ring snapshots from a simulate grid");
    render->add_option("--grid", ren.grid, "grid.csv from simulate")->required();
    render->add_option("--times", ren.times, "Comma list of initial, terminal");
    render->add_option("--format", ren.format, "Output format (svg)");
    render->add_option("--out", ren.out, "Output directory")->required();

    SpectrumOptions spec;
    auto* spectrum = app.add_subcommand("spectrum", "Fourier mode energies of the deformation");
    spectrum->add_option("--coeffs", spec.coeffs, "Coefficient JSON file")->required();
    spectrum->add_option("--config", spec.config, "Run configuration");
    spectrum->add_option("--time", spec.time, "terminal, initial or a time value");
    spectrum->add_option("--component", spec.component, "gamma1, gamma2 or both");
    spectrum->add_option("--threshold", spec.threshold, "Dominance threshold relative to the peak");
    spectrum->add_option("--out", spec.out, "Spectrum CSV path");

    VerifyCliOptions ver;
    auto* verify = app.add_subcommand("verify", "Run the derivation identity checks");
    verify->add_option("--inject-fault", ver.inject_fault, "Test hook: none or inverse-sign");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    }

    if (const char* env_seed = std::getenv("VAL_SEED"); env_seed != nullptr && *env_seed != '\0') {
        try {
            opt.seed = std::stoull(env_seed);
        } catch (const std::exception&) {
            err << "error: VAL_SEED is not an unsigned integer: " << env_seed << '\n';
            return kBadInput;
        }
    }

    try {
        if (*simulate) return cmd_simulate(sim, args, out, err);
        if (*baseline) return cmd_simulate(base, args, out, err);
        if (*optimize) return cmd_optimize(opt, args, out, err);
        if (*render) return cmd_render(ren, args, out, err);
        if (*spectrum) return cmd_spectrum(spec, args, out, err);
        if (*verify) return cmd_verify(ver, out, err);
    } catch (const LogCorrupt& e) {
        err << "error: trial log line " << e.line() << ": " << e.what() << '\n';
        return kCorruptLog;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kBadInput;
    }
    return kBadInput;
}

} // namespace vring::cli
