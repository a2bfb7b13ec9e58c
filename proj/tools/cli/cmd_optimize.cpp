#include <filesystem>
#include <ostream>

#include <json.hpp>

#include "cli/app.hpp"
#include "cli/commands.hpp"
#include "cli/format.hpp"
#include "cli/manifest.hpp"
#include "vring/coeff_io.hpp"
#include "vring/optimizer.hpp"

namespace vring::cli {

int cmd_optimize(const OptimizeOptions& opt, const std::vector<std::string>& argv, std::ostream& out,
                 std::ostream& err)
{
    const std::string started = utc_timestamp();
    RunConfig cfg = load_config_or_default(opt.config);
    if (opt.trials_qmc) cfg.study.n_qmc = *opt.trials_qmc;
    if (opt.trials_refine) cfg.study.n_refine = *opt.trials_refine;
    if (opt.seed) cfg.study.seed = *opt.seed;
    if (opt.parallel) cfg.study.parallel_width = *opt.parallel;
    if (opt.strategy) cfg.study.strategy = refine_strategy_from(*opt.strategy);
    if (opt.record_elapsed) cfg.study.record_elapsed = true;
    cfg.study.validate();
    cfg.ring.validate();

    const std::filesystem::path dir(opt.study);
    std::filesystem::create_directories(dir);
    const auto log_path = dir / "trials.jsonl";

    RunOptions run_opts;
    run_opts.max_new_trials = opt.max_trials;
    const StudyResult result = run_study(cfg.study, cfg.ring, log_path, run_opts);

    const auto n_trials = static_cast<std::int64_t>(result.history.size());
    if (n_trials == 0) {
        err << "error: no trials were evaluated\n";
        return kBadInput;
    }
    const TrialRecord& best = result.best;
    const SearchSpace space = SearchSpace::from(cfg.ring);
    write_coefficients(dir / "best_coeffs.json", space.unflatten(best.coeffs));

    nlohmann::ordered_json summary;
    summary["best_trial_id"] = best.trial_id;
    summary["best_score"] = best.score;
    summary["best_madc"] = best.madc;
    summary["best_feasible_fraction"] = best.feasible_fraction;
    summary["n_trials"] = n_trials;
    summary["complete"] = n_trials >= cfg.study.total();
    summary["resumed_from"] = result.resumed_from;
    summary["seed"] = cfg.study.seed;
    summary["wall_seconds"] = result.wall_seconds;
    summary["config"] = config_to_json(cfg);
    write_text_file(dir / "summary.json", summary.dump(2) + "\n");

    write_manifest(dir, argv, config_to_json(cfg), cfg.study.seed, started,
                   {"trials.jsonl", "summary.json", "best_coeffs.json"});

    out << "trials " << n_trials << " (resumed from " << result.resumed_from << ")\n";
    out << "best trial " << best.trial_id << " score " << fmt_double(best.score) << " madc "
        << fmt_double(best.madc) << " feasible_fraction " << fmt_double(best.feasible_fraction)
        << '\n';
    return kOk;
}

} // namespace vring::cli
