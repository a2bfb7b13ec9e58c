#include "vring/trial_log.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vring/errors.hpp"

namespace vring {

std::string trial_to_json_line(const TrialRecord& rec)
{
    nlohmann::ordered_json j;
    j["trial_id"] = rec.trial_id;
    j["phase"] = to_string(rec.phase);
    j["score"] = rec.score;
    j["madc"] = rec.madc;
    j["feasible_fraction"] = rec.feasible_fraction;
    j["coeffs"] = rec.coeffs;
    j["elapsed"] = rec.elapsed;
    return j.dump();
}

TrialRecord trial_from_json_line(const std::string& line, std::size_t line_no)
{
    TrialRecord rec;
    try {
        const auto j = nlohmann::json::parse(line);
        rec.trial_id = j.at("trial_id").get<std::int64_t>();
        const auto phase = j.at("phase").get<std::string>();
        if (phase == "qmc") {
            rec.phase = TrialPhase::qmc;
        } else if (phase == "refine") {
            rec.phase = TrialPhase::refine;
        } else {
            throw LogCorrupt("unknown phase '" + phase + "'", line_no);
        }
        rec.score = j.at("score").get<double>();
        rec.madc = j.at("madc").get<double>();
        rec.feasible_fraction = j.at("feasible_fraction").get<double>();
        rec.coeffs = j.at("coeffs").get<std::vector<double>>();
        rec.elapsed = j.at("elapsed").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw LogCorrupt(std::string("malformed trial record: ") + e.what(), line_no);
    }
    return rec;
}

std::vector<TrialRecord> read_trial_log(const std::filesystem::path& path, std::size_t expected_dim)
{
    std::vector<TrialRecord> history;
    if (!std::filesystem::exists(path)) return history;

    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read trial log: " + path.string());
    const std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < content.size()) {
        ++line_no;
        const std::size_t eol = content.find('\n', pos);
        if (eol == std::string::npos) {
            throw LogCorrupt("truncated final trial record (no newline)", line_no);
        }
        const std::string line = content.substr(pos, eol - pos);
        pos = eol + 1;

        TrialRecord rec = trial_from_json_line(line, line_no);
        if (rec.trial_id != static_cast<std::int64_t>(history.size())) {
            std::ostringstream msg;
            msg << "expected trial_id " << history.size() << ", found " << rec.trial_id;
            throw LogCorrupt(msg.str(), line_no);
        }
        if (rec.coeffs.size() != expected_dim) {
            std::ostringstream msg;
            msg << "coefficient vector has " << rec.coeffs.size() << " entries, study expects "
                << expected_dim;
            throw LogCorrupt(msg.str(), line_no);
        }
        history.push_back(std::move(rec));
    }
    return history;
}

} // namespace vring
