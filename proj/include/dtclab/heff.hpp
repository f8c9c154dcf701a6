#pragma once

#include <span>
#include <vector>

#include "dtclab/dense.hpp"
#include "dtclab/model.hpp"

namespace dtc {

/// Static Hamiltonian approximating two drive periods, (U_F)^2 ~ e^{-2i H}.
/// Uniform-coupling variant: per-site X/Y terms of order eps = (pi/2)(1-g)
/// plus phi/4 ZZ bonds. Disordered variant adds XZ/YZ neighbor terms and is
/// a qualitative approximation only.
struct EffectiveHamiltonian {
    int length = 0;
    double epsilon = 0.0;
    bool disordered_variant = false;
    std::vector<double> x_coeff;   // X_n
    std::vector<double> y_coeff;   // Y_n
    std::vector<double> zz_coeff;  // Z_n Z_{n+1}
    std::vector<double> xz_coeff;  // X_n (Z_{n-1} + Z_{n+1}), disordered variant
    std::vector<double> yz_coeff;  // Y_n (Z_{n-1} + Z_{n+1}), disordered variant

    // Dense Hermitian realization; guarded to small chains.
    CMat dense() const;
};

EffectiveHamiltonian heff_uniform(const DisorderInstance& inst);
EffectiveHamiltonian heff_disordered(const DisorderInstance& inst);

// E_s = (phi_bar/4) sum_n (-1)^{s_n + s_{n+1}} (domain-wall count).
double bitstring_energy_uniform(const std::vector<int>& bits, double phi_bar);

// E_s = sum_n (delta_phi_n/4) (-1)^{s_n + s_{n+1}} with delta_phi_n = phi_n + pi.
double bitstring_energy_disordered(const std::vector<int>& bits, std::span<const double> delta_phi);

std::vector<double> delta_phi_of(const DisorderInstance& inst);

/// Disorder realization equivalent to evolving bitstring |s> as if it were
/// the polarized state: conjugating the cycle by X_s maps (phi, h) to
/// (phi'', h'') within the original sampling ranges, up to a global phase.
struct GaugeMappedInstance {
    DisorderInstance original;
    std::vector<int> bits;
    std::vector<double> phi_mapped;  // in [-1.5pi, -0.5pi]
    std::vector<double> h_mapped;    // wrapped to (-pi, pi]

    DisorderInstance as_instance() const;
};

GaugeMappedInstance gauge_map(const DisorderInstance& inst, const std::vector<int>& bits);

// || (U_F)^2 - e^{-2i H_eff} ||_2, global-phase aligned; uniform mode, small L.
double bch_residual(const DisorderInstance& inst);

}  // namespace dtc
