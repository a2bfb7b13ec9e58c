#include <charconv>
#include <ostream>

#include "cli/app.hpp"
#include "cli/commands.hpp"
#include "cli/manifest.hpp"
#include "vring/coeff_io.hpp"
#include "vring/errors.hpp"
#include "vring/spectral.hpp"

namespace vring::cli {

namespace {

double resolve_time(const std::string& spec, const RingConfig& ring)
{
    if (spec == "terminal") return ring.t1;
    if (spec == "initial") return ring.t0;
    double t = 0.0;
    const auto res = std::from_chars(spec.data(), spec.data() + spec.size(), t);
    if (res.ec != std::errc() || res.ptr != spec.data() + spec.size()) {
        throw ConfigError("--time must be terminal, initial or a number, got '" + spec + "'");
    }
    if (t < ring.t0) throw ConfigError("--time must not precede t0");
    return t;
}

SpectrumComponent resolve_component(const std::string& name)
{
    if (name == "gamma1") return SpectrumComponent::gamma1;
    if (name == "gamma2") return SpectrumComponent::gamma2;
    if (name == "both") return SpectrumComponent::both;
    throw ConfigError("--component must be gamma1, gamma2 or both");
}

} // namespace

int cmd_spectrum(const SpectrumOptions& opt, const std::vector<std::string>&, std::ostream& out,
                 std::ostream&)
{
    RunConfig cfg = load_config_or_default(opt.config);
    const CoefficientTensor c = read_coefficients(opt.coeffs);
    if (opt.config.empty()) {
        cfg.ring.J = c.J();
        cfg.ring.K = c.K();
    }
    check_coefficients(c, cfg.ring);

    const double t = resolve_time(opt.time, cfg.ring);
    const ModeSpectrum spectrum =
        mode_energies(c, t, cfg.ring, resolve_component(opt.component), opt.threshold);
    write_text_file(opt.out, spectrum_to_csv(spectrum));

    out << "dominant_mode_count " << dominant_mode_count(spectrum) << '\n';
    return kOk;
}

} // namespace vring::cli
