#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "vring/config_io.hpp"

namespace vring::cli {

struct SimulateOptions {
    std::string config;
    std::string coeffs;
    std::string out;
    bool baseline = false;
    int workers = 1;
};

struct OptimizeOptions {
    std::string config;
    std::string study;
    std::optional<std::int64_t> trials_qmc;
    std::optional<std::int64_t> trials_refine;
    std::optional<std::uint64_t> seed;
    std::optional<int> parallel;
    std::optional<std::string> strategy;
    std::optional<std::int64_t> max_trials;
    bool record_elapsed = false;
};

struct RenderOptions {
    std::string grid;
    std::string times = "initial,terminal";
    std::string format = "svg";
    std::string out;
};

struct SpectrumOptions {
    std::string coeffs;
    std::string config;
    std::string time = "terminal";
    std::string component = "both";
    double threshold = 0.1;
    std::string out = "spectrum.csv";
};

struct VerifyCliOptions {
    std::string inject_fault = "none";
};

/// Loads the config file when a path is given, defaults otherwise.
RunConfig load_config_or_default(const std::string& path);

int cmd_simulate(const SimulateOptions& opt, const std::vector<std::string>& argv, std::ostream& out,
                 std::ostream& err);
int cmd_optimize(const OptimizeOptions& opt, const std::vector<std::string>& argv, std::ostream& out,
                 std::ostream& err);
int cmd_render(const RenderOptions& opt, const std::vector<std::string>& argv, std::ostream& out,
               std::ostream& err);
int cmd_spectrum(const SpectrumOptions& opt, const std::vector<std::string>& argv, std::ostream& out,
                 std::ostream& err);
int cmd_verify(const VerifyCliOptions& opt, std::ostream& out, std::ostream& err);

} // namespace vring::cli
