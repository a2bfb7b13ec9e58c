#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vring/objective_madc.hpp"
#include "vring/ring_model.hpp"

namespace vring {

/// Box [-c_max, c_max]^dim over the flattened coefficient tensor, row-major
/// in (l, m, j, k).
struct SearchSpace {
    int J = 0;
    int K = 0;
    double c_max = 30.0;

    static SearchSpace from(const RingConfig& cfg) { return {cfg.J, cfg.K, cfg.c_max}; }

    std::size_t dim() const { return static_cast<std::size_t>(4 * (J + 1) * (K + 1)); }
    double lower() const { return -c_max; }
    double upper() const { return c_max; }

    std::vector<double> flatten(const CoefficientTensor& c) const;
    CoefficientTensor unflatten(std::vector<double> x) const;
    double clamp(double x) const;
};

enum class RefineStrategy { perturb_best, density_ratio };

const char* to_string(RefineStrategy s);
RefineStrategy refine_strategy_from(const std::string& name);

struct StudyConfig {
    std::int64_t n_qmc = 10000;
    std::int64_t n_refine = 50;
    std::uint64_t seed = 0;
    RefineStrategy strategy = RefineStrategy::perturb_best;
    int parallel_width = 1;
    /// Write measured wall time into the log. Off by default so that logs
    /// are byte-reproducible; timings then go to the study summary only.
    bool record_elapsed = false;

    void validate() const;
    std::int64_t total() const { return n_qmc + n_refine; }
};

enum class TrialPhase { qmc, refine };

const char* to_string(TrialPhase p);

struct TrialRecord {
    std::int64_t trial_id = 0;
    TrialPhase phase = TrialPhase::qmc;
    double score = 0.0;
    double madc = 0.0;
    double feasible_fraction = 0.0;
    std::vector<double> coeffs;
    double elapsed = 0.0;

    bool feasible() const { return feasible_fraction > 0.0; }
};

/// n scrambled Sobol' points scaled to the search box; point i depends only
/// on (seed, i, space). Throws DimensionTooLarge.
std::vector<CoefficientTensor> sample_qmc(const SearchSpace& space, std::int64_t n,
                                          std::uint64_t seed, std::int64_t first_index = 0);

/// n in-bounds refinement candidates from the committed history. Candidate i
/// draws its randomness from (seed, first_trial_id + i). Throws
/// NoFeasibleHistory if no trial in history has a positive feasible fraction.
std::vector<CoefficientTensor> propose_refinements(const SearchSpace& space,
                                                   const std::vector<TrialRecord>& history,
                                                   std::int64_t n, std::uint64_t seed,
                                                   RefineStrategy strategy,
                                                   std::int64_t first_trial_id);

/// Step size the perturb_best strategy would use after `history`.
double perturb_step_size(const SearchSpace& space, const std::vector<TrialRecord>& history);

/// Scores one candidate: axis field, MADC and ranking score.
struct Evaluation {
    MadcReport report;
    double score = 0.0;
    bool trial_infeasible = false;
};

Evaluation evaluate_candidate(const CoefficientTensor& c, const RingConfig& ring);

struct StudyResult {
    TrialRecord best;
    std::vector<TrialRecord> history;
    std::int64_t resumed_from = 0;
    double wall_seconds = 0.0;
};

struct RunOptions {
    /// Stop after this many newly evaluated trials (simulates an interrupted run).
    std::optional<std::int64_t> max_new_trials;
    std::function<void(const TrialRecord&)> on_trial;
};

/// Runs (or resumes) a study, appending one JSON line per trial to log_path.
/// Throws LogCorrupt if an existing log cannot be resumed from.
StudyResult run_study(const StudyConfig& study, const RingConfig& ring,
                      const std::filesystem::path& log_path, const RunOptions& options = {});

/// Best trial by score; ties resolve to the lowest trial id.
const TrialRecord* best_trial(const std::vector<TrialRecord>& history);

} // namespace vring
