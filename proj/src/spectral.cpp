#include "vring/spectral.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace vring {

ModeSpectrum mode_energies(const CoefficientTensor& c, double t, const RingConfig& cfg,
                           SpectrumComponent component, double threshold)
{
    const int K = c.K();
    const double tau = t - cfg.t0;
    const double norm = 1.0 / (K + 1);

    ModeSpectrum out;
    out.threshold = threshold;
    out.energies.assign(K + 1, 0.0);
    for (int l = 1; l <= 2; ++l) {
        if (component == SpectrumComponent::gamma1 && l != 1) continue;
        if (component == SpectrumComponent::gamma2 && l != 2) continue;
        for (int k = 0; k <= K; ++k) {
            double sine = 0.0;
            double cosine = 0.0;
            double power = tau;
            for (int j = 0; j <= c.J(); ++j) {
                sine += c.at(l, 1, j, k) * power;
                cosine += c.at(l, 2, j, k) * power;
                power *= tau;
            }
            sine *= norm;
            cosine *= norm;
            // sin(0) vanishes, so the k = 0 sine amplitude carries no signal.
            if (k == 0) sine = 0.0;
            out.energies[k] += sine * sine + cosine * cosine;
        }
    }

    const double peak = *std::max_element(out.energies.begin(), out.energies.end());
    out.dominant.assign(K + 1, false);
    if (peak > 0.0) {
        for (int k = 0; k <= K; ++k) out.dominant[k] = out.energies[k] >= threshold * peak;
    }
    return out;
}

int dominant_mode_count(const ModeSpectrum& spectrum)
{
    return static_cast<int>(std::count(spectrum.dominant.begin(), spectrum.dominant.end(), true));
}

double parseval_mean_square(const ModeSpectrum& spectrum)
{
    double acc = 0.0;
    for (std::size_t k = 0; k < spectrum.energies.size(); ++k) {
        acc += k == 0 ? spectrum.energies[k] : 0.5 * spectrum.energies[k];
    }
    return acc;
}

std::string spectrum_to_csv(const ModeSpectrum& spectrum)
{
    std::ostringstream out;
    out << "k,E_k,dominant\n";
    for (std::size_t k = 0; k < spectrum.energies.size(); ++k) {
        char buf[64];
        const auto res = std::to_chars(buf, buf + sizeof buf, spectrum.energies[k]);
        out << k << ',' << std::string_view(buf, res.ptr - buf) << ','
            << (spectrum.dominant[k] ? 1 : 0) << '\n';
    }
    return out.str();
}

} // namespace vring
