#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dtclab/model.hpp"
#include "dtclab/rng.hpp"

namespace dtc {

/// Single-qubit depolarizing noise attached to the drive. `after_two_qubit`
/// applies rate p to both partners after every two-qubit gate;
/// `symmetric_per_cycle` applies rate p/2 to every qubit before and after
/// each full cycle.
struct NoiseModel {
    enum class Placement { after_two_qubit, symmetric_per_cycle };
    double p = 0.0;
    Placement placement = Placement::after_two_qubit;

    bool enabled() const { return p > 0.0; }
    void validate() const;
};

// One noisy forward cycle, O -> Phi(O). Works on any operator, not just
// states; tests use it to push Z_i through the channel.
void noisy_cycle(DensityMatrix& rho, const DisorderInstance& inst, const NoiseModel& noise);
// One noisy inverted cycle (backward evolution of the echo circuit).
void noisy_inverse_cycle(DensityMatrix& rho, const DisorderInstance& inst, const NoiseModel& noise);
// Adjoint channel O -> Phi^dag(O): one Heisenberg step with noise.
void noisy_cycle_adjoint(DensityMatrix& rho, const DisorderInstance& inst, const NoiseModel& noise);

/// Autocorrelator A_i(t) = z_i(0) <Z_i(t)> for one initial bitstring.
struct AutocorrSeries {
    int qubit = 0;
    std::vector<double> values;         // t = 0..t_max
    std::vector<double> normalization;  // A0(t) when computed, else empty
};

std::vector<AutocorrSeries> run_autocorrelator(const DisorderInstance& inst, const std::vector<int>& bits,
                                               int t_max);

/// Echo normalization A0 per qubit after t forward and t backward cycles.
struct EchoResult {
    std::vector<double> a0;
    std::vector<double> radicand;  // z_i(0) <Z_i> before the square root
    bool flagged = false;          // some radicand fell below -1e-12
};

EchoResult run_echo_normalization(const DisorderInstance& inst, const std::vector<int>& bits, int t,
                                  const NoiseModel& noise);

/// Brickwork state-preparation circuit: depth layers of random equatorial
/// single-qubit rotations (angle in [0.4 pi, 0.6 pi]) followed by CZ gates
/// on bonds of alternating parity.
struct ScramblerLayer {
    std::vector<double> axis;   // per qubit, [0, 2pi)
    std::vector<double> angle;  // per qubit, [0.4 pi, 0.6 pi]
    int cz_parity = 0;
};

struct ScramblerSpec {
    int length = 0;
    int depth = 0;
    std::uint64_t seed = 0;
    std::vector<ScramblerLayer> layers;
};

ScramblerSpec build_scrambler(int length, int depth, std::uint64_t seed);
// Acts on qubits 0..length-1; the state may carry extra (ancilla) qubits.
void apply_scrambler(StateVector& s, const ScramblerSpec& spec);
void apply_scrambler(DensityMatrix& rho, const ScramblerSpec& spec, const NoiseModel& noise);

/// Ancilla interferometry: <X_a> after CZ - t cycles - CZ on a scrambled
/// state equals Re <psi| Z_i(t) Z_i(0) |psi>.
double run_typicality(const DisorderInstance& inst, const ScramblerSpec& scr, const std::vector<int>& bits,
                      int qubit, int t);

// Density-matrix variant with depolarizing noise in the scrambler (after
// each CZ) and in the drive; validation-scale only.
double run_typicality_noisy(const DisorderInstance& inst, const ScramblerSpec& scr,
                            const std::vector<int>& bits, int qubit, int t, const NoiseModel& noise);

struct SpreadStats {
    int n = 0;
    double mean = 0.0;
    double sigma = 0.0;  // population convention
    double ratio = 0.0;  // sigma / |mean|
    bool flagged = false;
    std::vector<double> samples;
};

// Spread of run_typicality over random bitstrings, fresh scrambler per
// bitstring, all at the same depth.
SpreadStats typicality_spread(const DisorderInstance& inst, int depth, int qubit, int t, int n_bitstrings,
                              std::uint64_t seed);

/// Polarization response to a single initial bit flip.
/// zeta_r = |z1 - z2| / (|z1| + |z2|), with 0/0 defined as 0.
struct ZetaField {
    int flip_at = 0;
    std::vector<std::vector<double>> zeta1;   // [cycle][qubit]
    std::vector<std::vector<double>> zeta2;
    std::vector<std::vector<double>> zeta_r;

    // Per-qubit mean of zeta_r over cycles t_lo..t_hi inclusive.
    std::vector<double> window_mean(int t_lo, int t_hi) const;
};

ZetaField run_perturbation(const DisorderInstance& inst, const std::vector<int>& bits, int flip_at,
                           int t_max);

/// Spin-glass order parameter chi = (1/(L-2)) sum'_{i != j} <Z_i Z_j>^2,
/// interior ordered pairs, averaged over the selected cycles of the window.
struct SpinGlassResult {
    int length = 0;
    double g = 0.0;
    int t_lo = 0, t_hi = 0;
    double chi = 0.0;
    double stderr_ = 0.0;
    int instance_count = 1;
};

SpinGlassResult spin_glass_chi(const DisorderInstance& inst, const std::vector<int>& bits, int t_lo,
                               int t_hi, const NoiseModel& noise, bool even_times_only = true);

// chi of the current state (one time slice); shared by both engines.
double interior_pair_chi(const StateVector& s);
double interior_pair_chi(const DensityMatrix& rho);

std::vector<int> random_bits(int length, Rng& rng);

}  // namespace dtc
