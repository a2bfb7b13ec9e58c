#include "vring/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <thread>

#include "vring/errors.hpp"
#include "vring/sobol.hpp"
#include "vring/trial_log.hpp"
#include "vring/wave_dynamics.hpp"

namespace vring {

namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Small deterministic generator; outputs do not depend on the standard
// library's distribution implementations.
class Rng {
public:
    Rng(std::uint64_t seed, std::uint64_t stream) : state_(splitmix64(seed ^ splitmix64(stream))) {}

    std::uint64_t next()
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return splitmix64(state_);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double normal()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
        has_spare_ = true;
        return r * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

constexpr std::uint64_t kSobolStream = 0x51ab01;
constexpr std::uint64_t kRefineStream = 0x7e71e;

std::vector<const TrialRecord*> feasible_trials(const std::vector<TrialRecord>& history)
{
    std::vector<const TrialRecord*> out;
    for (const auto& rec : history) {
        if (rec.feasible() && std::isfinite(rec.score)) out.push_back(&rec);
    }
    return out;
}

std::vector<CoefficientTensor> propose_perturb_best(const SearchSpace& space,
                                                    const std::vector<TrialRecord>& history,
                                                    std::int64_t n, std::uint64_t seed,
                                                    std::int64_t first_trial_id)
{
    const TrialRecord* center = best_trial(history);
    const double sigma = perturb_step_size(space, history);
    std::vector<CoefficientTensor> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        Rng rng(seed, kRefineStream + static_cast<std::uint64_t>(first_trial_id + i));
        std::vector<double> x(space.dim());
        for (std::size_t d = 0; d < x.size(); ++d) {
            x[d] = space.clamp(center->coeffs[d] + sigma * rng.normal());
        }
        out.push_back(space.unflatten(std::move(x)));
    }
    return out;
}

// Univariate Parzen estimator over one coordinate: Gaussian kernels at the
// observations plus a uniform prior component over the box.
struct Parzen {
    std::vector<double> centers;
    double bandwidth = 1.0;
    double lower = 0.0;
    double upper = 1.0;

    double log_density(double x) const
    {
        const double width = upper - lower;
        const double n = static_cast<double>(centers.size());
        double acc = 1.0 / width;
        const double norm = 1.0 / (bandwidth * std::sqrt(2.0 * std::numbers::pi));
        for (double c : centers) {
            const double z = (x - c) / bandwidth;
            acc += norm * std::exp(-0.5 * z * z);
        }
        return std::log(acc / (n + 1.0));
    }

    double sample(Rng& rng) const
    {
        const std::size_t pick = rng.index(centers.size() + 1);
        double x = pick == centers.size() ? lower + (upper - lower) * rng.uniform()
                                          : centers[pick] + bandwidth * rng.normal();
        return std::clamp(x, lower, upper);
    }
};

Parzen make_parzen(std::vector<double> values, const SearchSpace& space)
{
    Parzen p;
    p.lower = space.lower();
    p.upper = space.upper();
    const double width = p.upper - p.lower;
    const double n = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    const double sd = values.size() > 1 ? std::sqrt(var / (n - 1.0)) : width;
    // Scott's rule, kept within [1%, 100%] of the box width.
    p.bandwidth = std::clamp(1.06 * sd * std::pow(n, -0.2), 0.01 * width, width);
    p.centers = std::move(values);
    return p;
}

std::vector<CoefficientTensor> propose_density_ratio(const SearchSpace& space,
                                                     const std::vector<TrialRecord>& history,
                                                     std::int64_t n, std::uint64_t seed,
                                                     std::int64_t first_trial_id)
{
    constexpr int kCandidates = 24;
    auto ranked = feasible_trials(history);
    std::stable_sort(ranked.begin(), ranked.end(), [](const TrialRecord* a, const TrialRecord* b) {
        return a->score > b->score;
    });
    const auto n_good = std::clamp<std::size_t>(
        static_cast<std::size_t>(std::ceil(0.1 * static_cast<double>(ranked.size()))), 1, 25);

    const std::size_t dim = space.dim();
    std::vector<Parzen> good(dim);
    std::vector<Parzen> bad(dim);
    for (std::size_t d = 0; d < dim; ++d) {
        std::vector<double> g;
        std::vector<double> b;
        for (std::size_t r = 0; r < ranked.size(); ++r) {
            (r < n_good ? g : b).push_back(ranked[r]->coeffs[d]);
        }
        // With nothing ranked below the top group the "bad" model is the prior.
        good[d] = make_parzen(std::move(g), space);
        bad[d] = b.empty() ? Parzen{{}, 1.0, space.lower(), space.upper()}
                           : make_parzen(std::move(b), space);
    }

    std::vector<CoefficientTensor> out;
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        Rng rng(seed, kRefineStream + static_cast<std::uint64_t>(first_trial_id + i));
        std::vector<double> x(dim);
        for (std::size_t d = 0; d < dim; ++d) {
            double best_x = 0.0;
            double best_ratio = -std::numeric_limits<double>::infinity();
            for (int c = 0; c < kCandidates; ++c) {
                const double cand = good[d].sample(rng);
                const double ratio = good[d].log_density(cand) - bad[d].log_density(cand);
                if (ratio > best_ratio) {
                    best_ratio = ratio;
                    best_x = cand;
                }
            }
            x[d] = best_x;
        }
        out.push_back(space.unflatten(std::move(x)));
    }
    return out;
}

TrialRecord evaluate_trial(std::int64_t id, TrialPhase phase, const CoefficientTensor& c,
                           const RingConfig& ring, bool record_elapsed)
{
    const auto start = std::chrono::steady_clock::now();
    const Evaluation ev = evaluate_candidate(c, ring);
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;

    TrialRecord rec;
    rec.trial_id = id;
    rec.phase = phase;
    rec.score = ev.score;
    rec.madc = ev.report.madc;
    rec.feasible_fraction = ev.report.feasible_fraction;
    rec.coeffs.assign(c.flat().begin(), c.flat().end());
    rec.elapsed = record_elapsed ? took.count() : 0.0;
    return rec;
}

} // namespace

std::vector<double> SearchSpace::flatten(const CoefficientTensor& c) const
{
    if (c.J() != J || c.K() != K) throw DimensionMismatch("tensor shape does not match search space");
    return {c.flat().begin(), c.flat().end()};
}

CoefficientTensor SearchSpace::unflatten(std::vector<double> x) const
{
    return CoefficientTensor(J, K, std::move(x));
}

double SearchSpace::clamp(double x) const { return std::clamp(x, lower(), upper()); }

const char* to_string(RefineStrategy s)
{
    return s == RefineStrategy::perturb_best ? "perturb_best" : "density_ratio";
}

RefineStrategy refine_strategy_from(const std::string& name)
{
    if (name == "perturb_best") return RefineStrategy::perturb_best;
    if (name == "density_ratio") return RefineStrategy::density_ratio;
    throw ConfigError("unknown refinement strategy '" + name + "'");
}

const char* to_string(TrialPhase p) { return p == TrialPhase::qmc ? "qmc" : "refine"; }

void StudyConfig::validate() const
{
    if (n_qmc < 0 || n_refine < 0) throw ConfigError("trial counts must be >= 0");
    if (total() < 1) throw ConfigError("a study needs at least one trial");
    if (parallel_width < 1) throw ConfigError("parallel_width must be >= 1");
}

std::vector<CoefficientTensor> sample_qmc(const SearchSpace& space, std::int64_t n,
                                          std::uint64_t seed, std::int64_t first_index)
{
    std::vector<CoefficientTensor> out;
    if (n <= 0) return out;
    const SobolSequence seq(space.dim(), true, splitmix64(seed ^ kSobolStream));
    out.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        std::vector<double> u = seq.point(static_cast<std::uint64_t>(first_index + i));
        for (double& x : u) x = space.clamp(space.lower() + (space.upper() - space.lower()) * x);
        out.push_back(space.unflatten(std::move(u)));
    }
    return out;
}

const TrialRecord* best_trial(const std::vector<TrialRecord>& history)
{
    const TrialRecord* best = nullptr;
    for (const auto& rec : history) {
        if (!std::isfinite(rec.score)) continue;
        if (best == nullptr || rec.score > best->score) best = &rec;
    }
    return best;
}

double perturb_step_size(const SearchSpace& space, const std::vector<TrialRecord>& history)
{
    // 1/5th success rule: expand on improvement, shrink otherwise, with the
    // ratio of log factors chosen so a 20% success rate keeps sigma fixed.
    double sigma = 0.1 * space.c_max;
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& rec : history) {
        if (rec.phase == TrialPhase::refine) {
            sigma *= rec.score > best ? std::exp(1.0 / 3.0) : std::exp(-1.0 / 12.0);
            sigma = std::clamp(sigma, 1e-6 * space.c_max, space.c_max);
        }
        if (std::isfinite(rec.score)) best = std::max(best, rec.score);
    }
    return sigma;
}

std::vector<CoefficientTensor> propose_refinements(const SearchSpace& space,
                                                   const std::vector<TrialRecord>& history,
                                                   std::int64_t n, std::uint64_t seed,
                                                   RefineStrategy strategy,
                                                   std::int64_t first_trial_id)
{
    if (feasible_trials(history).empty()) {
        throw NoFeasibleHistory("refinement needs at least one feasible trial in the history");
    }
    if (n <= 0) return {};
    for (const auto& rec : history) {
        if (rec.coeffs.size() != space.dim()) {
            throw DimensionMismatch("history coefficients do not match the search space");
        }
    }
    return strategy == RefineStrategy::perturb_best
               ? propose_perturb_best(space, history, n, seed, first_trial_id)
               : propose_density_ratio(space, history, n, seed, first_trial_id);
}

Evaluation evaluate_candidate(const CoefficientTensor& c, const RingConfig& ring)
{
    const AxisField field = axis_field(c, ring);
    Evaluation ev;
    ev.report = madc(field, ring);
    ev.score = ranking_score(ev.report);
    ev.trial_infeasible = field.trial_infeasible;
    return ev;
}

StudyResult run_study(const StudyConfig& study, const RingConfig& ring,
                      const std::filesystem::path& log_path, const RunOptions& options)
{
    study.validate();
    ring.validate();
    const SearchSpace space = SearchSpace::from(ring);
    if (space.dim() > SobolSequence::max_dimension() && study.n_qmc > 0) {
        std::ostringstream msg;
        msg << "search dimension " << space.dim() << " exceeds the Sobol' generator limit of "
            << SobolSequence::max_dimension() << "; reduce J or K";
        throw DimensionTooLarge(msg.str());
    }

    const auto wall_start = std::chrono::steady_clock::now();
    StudyResult result;
    result.history = read_trial_log(log_path, space.dim());
    result.resumed_from = static_cast<std::int64_t>(result.history.size());
    for (const auto& rec : result.history) {
        const TrialPhase expected = rec.trial_id < study.n_qmc ? TrialPhase::qmc : TrialPhase::refine;
        if (rec.phase != expected) {
            throw LogCorrupt("trial phase does not match this study's qmc budget",
                             static_cast<std::size_t>(rec.trial_id) + 1);
        }
    }

    std::ofstream log(log_path, std::ios::app | std::ios::binary);
    if (!log) throw std::runtime_error("cannot open trial log for writing: " + log_path.string());

    const std::uint64_t qmc_seed = study.seed;
    std::int64_t next = result.resumed_from;
    std::int64_t evaluated = 0;
    const std::int64_t width = study.parallel_width;

    while (next < study.total()) {
        std::int64_t batch = std::min<std::int64_t>(width, study.total() - next);
        if (next < study.n_qmc) batch = std::min(batch, study.n_qmc - next);
        if (options.max_new_trials) {
            batch = std::min(batch, *options.max_new_trials - evaluated);
            if (batch <= 0) break;
        }

        const TrialPhase phase = next < study.n_qmc ? TrialPhase::qmc : TrialPhase::refine;
        std::vector<CoefficientTensor> candidates;
        if (phase == TrialPhase::qmc || feasible_trials(result.history).empty()) {
            // Without any feasible trial to refine around, keep exploring the
            // low-discrepancy sequence.
            candidates = sample_qmc(space, batch, qmc_seed, next);
        } else {
            candidates = propose_refinements(space, result.history, batch, study.seed,
                                             study.strategy, next);
        }

        std::vector<TrialRecord> records(static_cast<std::size_t>(batch));
        if (batch == 1) {
            records[0] = evaluate_trial(next, phase, candidates[0], ring, study.record_elapsed);
        } else {
            std::vector<std::jthread> workers;
            for (std::int64_t i = 0; i < batch; ++i) {
                workers.emplace_back([&, i] {
                    records[i] = evaluate_trial(next + i, phase, candidates[i], ring,
                                                study.record_elapsed);
                });
            }
        }

        for (auto& rec : records) {
            log << trial_to_json_line(rec) << '\n';
            log.flush();
            if (!log) throw std::runtime_error("write to trial log failed: " + log_path.string());
            if (options.on_trial) options.on_trial(rec);
            result.history.push_back(std::move(rec));
        }
        next += batch;
        evaluated += batch;
    }

    if (const TrialRecord* best = best_trial(result.history)) result.best = *best;
    const std::chrono::duration<double> wall = std::chrono::steady_clock::now() - wall_start;
    result.wall_seconds = wall.count();
    return result;
}

} // namespace vring
