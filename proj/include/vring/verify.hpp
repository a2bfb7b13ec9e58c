#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "vring/ring_model.hpp"
#include "vring/vec3.hpp"

// Numerical certificates for the algebraic steps behind the wave equations:
// the inverse of the moving-frame Jacobian, the first-order expansion of its
// inverse determinant, the time/arc-length Leibniz identity and the
// rearrangement of the closure equations into the wave equations.
//
// The closure equations are checked as identities in their symbols only.
// Nothing here solves the Euler equations or evaluates a pressure field.

namespace vring {

using Mat3 = std::array<std::array<double, 3>, 3>;

/// Symbols entering the near-axis Jacobian of the flow map.
struct FrameMatrixInput {
    double kappa = 0.0;
    double torsion = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
    double dz_alpha1 = 0.0;
    double dz_alpha2 = 0.0;
    double R1 = 0.0;
    double R2 = 0.0;
};

/// M = [[A, B, C], [alpha1, 1, 0], [alpha2, 0, 1]].
struct FrameMatrixEntries {
    double A = 1.0;
    double B = 0.0;
    double C = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;

    double det() const { return A - B * alpha1 - C * alpha2; }
};

/// A = 1 - kappa R1 + R1 dz_alpha1 + R2 dz_alpha2,
/// B = -R2 T + (R1 alpha1 + R2 alpha2) kappa, C = R1 T.
FrameMatrixEntries frame_matrix_entries(const FrameMatrixInput& in);

Mat3 frame_matrix(const FrameMatrixEntries& e);

/// Closed-form inverse D^-1 [[1, -B, -C], [-a1, A - C a2, C a1], [-a2, B a2, A - B a1]].
/// Throws SingularD when |D| <= 1e-8.
Mat3 frame_matrix_inverse(const FrameMatrixEntries& e);

using InverseFormula = std::function<Mat3(const FrameMatrixEntries&)>;

/// max |(M M^-1 - I)_ij| for the given inverse formula.
double check_inverse_matrix(const FrameMatrixEntries& e,
                            const InverseFormula& inverse = frame_matrix_inverse);
double check_inverse_matrix(const FrameMatrixInput& in,
                            const InverseFormula& inverse = frame_matrix_inverse);

/// First-order expansion of 1/D in (R1, R2) around R1 = R2 = 0.
double dinv_linear_expansion(const FrameMatrixInput& in);

/// Log-log slope of |1/D - linear expansion| against eps for
/// (R1, R2) = eps * direction, eps in {1e-1, 1e-2, 1e-3, 1e-4}. The base
/// point's R1, R2 are ignored. Returns +infinity if the remainder vanishes.
double check_dinv_expansion(const FrameMatrixInput& base, double dir1, double dir2);

/// First and second time derivatives of a curve at t.
struct CurveJet {
    Vec3 d1;
    Vec3 d2;
};
using CurveSource = std::function<CurveJet(double t)>;

/// |d2 - v^2 dzz - v' dz| relative to the largest of the three terms, with
/// dz = d1 / v and dzz = v^-1 d/dt(d1 / v) by Richardson-extrapolated
/// central differences of step h. Throws ZeroSpeed.
double check_leibniz_identity(const CurveSource& curve, double t, double h);

/// Same on the ring trajectory at (t, s), h = 1e-2 (t1 - t0).
double check_leibniz_identity(const CoefficientTensor& c, const RingConfig& cfg, double t, double s);

struct ClosureInput {
    double v = 1.0;
    double v_t = 0.0;
    double v_tt = 0.0;
    double kappa = 0.0;
    double kappa_t = 0.0;
    double torsion = 0.0;
    double alpha1 = 0.0;
    double alpha2 = 0.0;
};

/// Second derivatives given by the wave equations.
std::pair<double, double> wave_equation_accelerations(const ClosureInput& in);

/// Residuals of both closure equations with dz kappa = kappa_t / v and the
/// accelerations supplied. Defaults to the wave-equation values.
std::pair<double, double> check_closure_rearrangement(const ClosureInput& in, double alpha1_tt,
                                                      double alpha2_tt);
std::pair<double, double> check_closure_rearrangement(const ClosureInput& in);

struct CheckResult {
    std::string name;
    int cases = 0;
    double worst = 0.0;
    double tolerance = 0.0;
    /// true when worst must stay below tolerance, false when it must reach it
    bool upper_bound = true;
    bool passed = false;
};

struct VerifyOptions {
    std::uint64_t seed = 20240611;
    int inverse_cases = 1000;
    int dinv_cases = 100;
    int leibniz_cases = 100;
    int closure_cases = 1000;
    InverseFormula inverse = frame_matrix_inverse;
};

/// Runs the four randomized checks at their tolerances.
std::vector<CheckResult> run_verify_suite(const VerifyOptions& options = {});

} // namespace vring
