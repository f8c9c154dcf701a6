#pragma once

#include <span>
#include <string>
#include <vector>

#include "dtclab/model.hpp"

namespace dtc {

/// Least-squares cosine fit y = b0 + b1 cos(x + xi0), solved by
/// linearization to a*cos x + b*sin x + c. b1 >= 0, xi0 in (-pi, pi].
struct CosineFit {
    double b0 = 0.0;
    double b1 = 0.0;
    double xi0 = 0.0;
    double rms = 0.0;
};

CosineFit fit_cosine(std::span<const double> xs, std::span<const double> ys);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
};

LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

enum class FitKind { cosine, line, sinusoid };

struct CalibrationFit {
    std::string parameter;
    double estimate = 0.0;
    double residual_rms = 0.0;
    FitKind kind = FitKind::cosine;
    bool flagged = false;
};

/// Ramsey-style extraction of the phase difference: each qubit separately
/// prepared along +x, d gates, Z(xi) sweep, sqrt(Y), measure P1; fitted
/// phases give delta_minus = (xi_a - xi_b) / (2 d). Exact at theta = 0.
struct DeltaMinusResult {
    std::vector<double> p1_a, p1_b;  // along xi_grid
    CosineFit fit_a, fit_b;
    CalibrationFit fit;  // parameter "delta_minus"
};

DeltaMinusResult simulate_delta_minus(const FsimParams& params, int d, std::span<const double> xi_grid);

/// Four tomography sequences over a depth list: the Bloch angle sum
/// alpha1+alpha2 grows as 2 d delta_plus, and alpha4-alpha3 as -d phi.
/// Phases are unwrapped by nearest continuation across depths; set
/// `negative_phase_branch` when the conditional phase is known to lie in
/// (-2 pi, 0) (which puts delta_plus in (-pi, 0)), as for the drive's gates.
struct PhaseSumResult {
    std::vector<int> depths;
    std::vector<double> alpha_sum;   // unwrapped alpha1 + alpha2
    std::vector<double> alpha_diff;  // unwrapped alpha4 - alpha3
    CalibrationFit delta_plus;
    CalibrationFit phi;
};

PhaseSumResult simulate_phase_sums(const FsimParams& params, std::span<const int> depths,
                                   bool negative_phase_branch = false);

/// iSWAP-angle extraction from the composite gate FSIM * Xa * Yb applied d
/// times (d odd) from |10>, sweeping the angle psi injected into the pi
/// rotations. The peak-to-peak P1 amplitude equals cos^2(theta) -
/// cos^2(d theta) exactly; theta is recovered by inverting that law on the
/// smallest positive branch.
struct ThetaResult {
    std::vector<double> p1;  // along psi_grid
    double peak_to_peak = 0.0;
    CalibrationFit fit;      // parameter "theta"
    bool clipped = false;    // amplitude exceeded 1 numerically
};

ThetaResult simulate_theta(const FsimParams& params, int d, std::span<const double> psi_grid,
                           bool refine_extrema = true);

// P1 of qubit b after d composite cycles at a given psi (exposed for tests).
double theta_sequence_p1(const FsimParams& params, int d, double psi);

}  // namespace dtc
