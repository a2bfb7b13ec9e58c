#include <filesystem>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "cli/app.hpp"
#include "cli/commands.hpp"
#include "cli/format.hpp"
#include "cli/manifest.hpp"
#include "vring/coeff_io.hpp"
#include "vring/objective_madc.hpp"
#include "vring/wave_dynamics.hpp"

namespace vring::cli {

namespace {

std::string grid_csv(const AxisField& field)
{
    std::ostringstream out;
    out << "t,s,x,y,z,zsx,zsy,zsz,zx,zy,zz,corr,feasible\n";
    for (int i = 0; i <= field.n_time; ++i) {
        for (int k = 0; k < field.n_s; ++k) {
            const std::size_t idx = field.at(i, k);
            const Vec3& p = field.position[idx];
            const Vec3& zs = field.zeta_star_hat[idx];
            const Vec3& z = field.zeta_hat[idx];
            out << fmt_double(field.times[i]) << ',' << fmt_double(field.s_values[k]) << ','
                << fmt_double(p.x) << ',' << fmt_double(p.y) << ',' << fmt_double(p.z) << ','
                << fmt_double(zs.x) << ',' << fmt_double(zs.y) << ',' << fmt_double(zs.z) << ','
                << fmt_double(z.x) << ',' << fmt_double(z.y) << ',' << fmt_double(z.z) << ','
                << fmt_double(field.corr[idx]) << ',' << (field.feasible[k] ? 1 : 0) << '\n';
        }
    }
    return out.str();
}

nlohmann::ordered_json report_json(const MadcReport& report, const AxisField& field)
{
    auto nullable = [](const std::vector<double>& xs) {
        auto arr = nlohmann::ordered_json::array();
        for (double x : xs) arr.push_back(std::isnan(x) ? nlohmann::ordered_json() : nlohmann::ordered_json(x));
        return arr;
    };
    nlohmann::ordered_json j;
    j["madc"] = report.madc;
    j["feasible_fraction"] = report.feasible_fraction;
    j["score"] = ranking_score(report);
    j["feasible_columns"] = field.feasible_count();
    j["n_time"] = field.n_time;
    j["n_s"] = field.n_s;
    j["trial_infeasible"] = field.trial_infeasible;
    j["note"] = field.note;
    j["per_time_mean"] = nullable(report.per_time_mean);
    j["per_s_mean"] = nullable(report.per_s_mean);
    return j;
}

} // namespace

int cmd_simulate(const SimulateOptions& opt, const std::vector<std::string>& argv, std::ostream& out,
                 std::ostream& err)
{
    const std::string started = utc_timestamp();
    RunConfig cfg = load_config_or_default(opt.config);

    CoefficientTensor c = CoefficientTensor::zeros(cfg.ring);
    if (!opt.baseline) {
        c = read_coefficients(opt.coeffs);
        if (opt.config.empty()) {
            cfg.ring.J = c.J();
            cfg.ring.K = c.K();
        }
        check_coefficients(c, cfg.ring);
    }

    const AxisField field = axis_field(c, cfg.ring, opt.workers);
    const MadcReport report = madc(field, cfg.ring);

    const std::filesystem::path dir(opt.out);
    std::filesystem::create_directories(dir);
    write_text_file(dir / "grid.csv", grid_csv(field));
    write_text_file(dir / "madc_report.json", report_json(report, field).dump(2) + "\n");
    std::vector<std::string> files{"grid.csv", "madc_report.json"};
    if (!opt.baseline) {
        write_coefficients(dir / "coeffs.json", c);
        files.push_back("coeffs.json");
    }
    write_manifest(dir, argv, config_to_json(cfg), cfg.study.seed, started, files);

    out << "madc " << fmt_double(report.madc) << " feasible_fraction "
        << fmt_double(report.feasible_fraction) << " score " << fmt_double(ranking_score(report))
        << '\n';
    if (field.feasible_count() == 0) {
        err << "error: infeasible everywhere: "
            << (field.note.empty() ? std::string("no feasible column") : field.note) << '\n';
        return kInfeasible;
    }
    return kOk;
}

} // namespace vring::cli
