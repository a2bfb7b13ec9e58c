#pragma once

#include <string>
#include <vector>

#include "vring/ring_model.hpp"

namespace vring {

enum class SpectrumComponent { gamma1, gamma2, both };

/// Per-mode energy of the deformation series at one time.
///
/// With a_k, b_k the sine and cosine amplitudes of the (K+1)^-1-normalized
/// series, E_k = a_k^2 + b_k^2 (summed over gamma_1, gamma_2 for `both`).
/// The s-mean of gamma^2 equals E_0 + (1/2) sum_{k>=1} E_k.
struct ModeSpectrum {
    std::vector<double> energies;
    std::vector<bool> dominant;
    double threshold = 0.1;
};

ModeSpectrum mode_energies(const CoefficientTensor& c, double t, const RingConfig& cfg,
                           SpectrumComponent component = SpectrumComponent::both,
                           double threshold = 0.1);

/// Number of modes with E_k >= threshold * max E (zero for a zero spectrum).
int dominant_mode_count(const ModeSpectrum& spectrum);

/// E_0 + (1/2) sum_{k>=1} E_k: the s-mean of the squared signal.
double parseval_mean_square(const ModeSpectrum& spectrum);

/// CSV with header `k,E_k,dominant`.
std::string spectrum_to_csv(const ModeSpectrum& spectrum);

} // namespace vring
