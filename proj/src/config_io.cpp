#include "vring/config_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "vring/errors.hpp"

namespace vring {

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double_strict(const std::string& text, const std::string& key)
{
    const char* begin = text.data();
    const char* end = begin + text.size();
    double out = 0.0;
    const auto res = std::from_chars(begin, end, out);
    if (res.ec != std::errc() || res.ptr != end) {
        throw ConfigError("config key '" + key + "': cannot parse '" + text + "' as a number");
    }
    return out;
}

double parse_real(const std::string& text, const std::string& key)
{
    const auto slash = text.find('/');
    if (slash == std::string::npos) return parse_double_strict(text, key);
    const double num = parse_double_strict(trim(text.substr(0, slash)), key);
    const double den = parse_double_strict(trim(text.substr(slash + 1)), key);
    if (den == 0.0) throw ConfigError("config key '" + key + "': zero denominator");
    return num / den;
}

template <typename Int>
Int parse_int(const std::string& text, const std::string& key)
{
    Int out{};
    const char* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, out);
    if (res.ec != std::errc() || res.ptr != end) {
        throw ConfigError("config key '" + key + "': cannot parse '" + text + "' as an integer");
    }
    return out;
}

bool parse_bool(const std::string& text, const std::string& key)
{
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw ConfigError("config key '" + key + "': expected true/false, got '" + text + "'");
}

template <typename Json>
std::string json_scalar_text(const Json& v, const std::string& key)
{
    if (v.is_string()) return v.template get<std::string>();
    if (v.is_boolean()) return v.template get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.template get<std::int64_t>());
    if (v.is_number_unsigned()) return std::to_string(v.template get<std::uint64_t>());
    if (v.is_number_float()) {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, v.template get<double>());
        return std::string(buf, res.ptr);
    }
    throw ConfigError("config key '" + key + "': expected a scalar value");
}

} // namespace

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value)
{
    RingConfig& r = cfg.ring;
    StudyConfig& s = cfg.study;
    if (key == "delta") r.delta = parse_real(value, key);
    else if (key == "J") r.J = parse_int<int>(value, key);
    else if (key == "K") r.K = parse_int<int>(value, key);
    else if (key == "t0") r.t0 = parse_real(value, key);
    else if (key == "t1") r.t1 = parse_real(value, key);
    else if (key == "n_time") r.n_time = parse_int<int>(value, key);
    else if (key == "n_s") r.n_s = parse_int<int>(value, key);
    else if (key == "c_max") r.c_max = parse_real(value, key);
    else if (key == "angle_convention") {
        if (value == "turns") r.angle_convention = AngleConvention::turns;
        else if (value == "radians") r.angle_convention = AngleConvention::radians;
        else throw ConfigError("config key 'angle_convention': expected turns or radians");
    }
    else if (key == "eps_v") r.eps_v = parse_real(value, key);
    else if (key == "eps_kappa") r.eps_kappa = parse_real(value, key);
    else if (key == "eps_align") r.eps_align = parse_real(value, key);
    else if (key == "fd_step_factor") r.fd_step_factor = parse_real(value, key);
    else if (key == "n_qmc") s.n_qmc = parse_int<std::int64_t>(value, key);
    else if (key == "n_refine") s.n_refine = parse_int<std::int64_t>(value, key);
    else if (key == "seed") s.seed = parse_int<std::uint64_t>(value, key);
    else if (key == "strategy") s.strategy = refine_strategy_from(value);
    else if (key == "parallel_width") s.parallel_width = parse_int<int>(value, key);
    else if (key == "record_elapsed") s.record_elapsed = parse_bool(value, key);
    else throw ConfigError("unknown config key '" + key + "'");
}

RunConfig parse_run_config(const std::string& text)
{
    RunConfig cfg;
    const std::string body = trim(text);
    if (!body.empty() && body.front() == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(body);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("config JSON: ") + e.what());
        }
        if (!j.is_object()) throw ConfigError("config JSON must be a flat object");
        for (const auto& [key, value] : j.items()) {
            set_config_value(cfg, key, json_scalar_text(value, key));
        }
    } else {
        std::istringstream in(text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
            }
            set_config_value(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }
    cfg.ring.validate();
    cfg.study.validate();
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file: " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_run_config(buf.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

nlohmann::ordered_json config_to_json(const RunConfig& cfg)
{
    const RingConfig& r = cfg.ring;
    const StudyConfig& s = cfg.study;
    nlohmann::ordered_json j;
    j["delta"] = r.delta;
    j["J"] = r.J;
    j["K"] = r.K;
    j["t0"] = r.t0;
    j["t1"] = r.t1;
    j["n_time"] = r.n_time;
    j["n_s"] = r.n_s;
    j["c_max"] = r.c_max;
    j["angle_convention"] = r.angle_convention == AngleConvention::turns ? "turns" : "radians";
    j["eps_v"] = r.eps_v;
    j["eps_kappa"] = r.eps_kappa;
    j["eps_align"] = r.eps_align;
    j["fd_step_factor"] = r.fd_step_factor;
    j["n_qmc"] = s.n_qmc;
    j["n_refine"] = s.n_refine;
    j["seed"] = s.seed;
    j["strategy"] = to_string(s.strategy);
    j["parallel_width"] = s.parallel_width;
    j["record_elapsed"] = s.record_elapsed;
    return j;
}

std::string config_to_text(const RunConfig& cfg)
{
    std::ostringstream out;
    const auto echo = config_to_json(cfg);
    for (const auto& [key, value] : echo.items()) {
        out << key << " = " << json_scalar_text(value, key) << '\n';
    }
    return out.str();
}

} // namespace vring
