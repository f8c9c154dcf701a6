#pragma once

#include <cstdint>
#include <vector>

#include "dtclab/density_matrix.hpp"
#include "dtclab/gates.hpp"
#include "dtclab/state_vector.hpp"

namespace dtc {

inline constexpr double kPi = 3.14159265358979323846;

enum class CouplingMode { disordered, uniform };

/// One realization of the kicked-Ising drive on an open chain:
/// per cycle, x rotation by pi*g on every qubit, then ZZ(phi_i) on every
/// bond, then a z rotation by h_i on every qubit.
struct DisorderInstance {
    int length = 0;
    double g = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> phi;  // length-1 bond couplings (radians)
    std::vector<double> h;    // length on-site fields (radians)
    CouplingMode mode = CouplingMode::disordered;

    void validate() const;
};

// phi_i uniform i.i.d. in [-1.5pi, -0.5pi], h_i in [-pi, pi]; deterministic
// in (L, g, seed).
DisorderInstance sample_disorder(int length, double g, std::uint64_t seed);

// All couplings equal phi_bar; h_i drawn from the same stream as
// sample_disorder(length, g, seed), so paired experiments share fields.
DisorderInstance uniform_instance(int length, double g, double phi_bar, std::uint64_t seed);

// Instance with explicit phi/h vectors (deserialization, gauge mapping).
DisorderInstance make_instance(int length, double g, std::uint64_t seed, std::vector<double> phi,
                               std::vector<double> h, CouplingMode mode);

/// Five-angle two-qubit gate family parameterization.
struct FsimParams {
    double theta = 0.0;
    double delta_plus = 0.0;
    double delta_minus = 0.0;
    double delta_minus_off = 0.0;
    double phi = 0.0;
};

GateMatrix fsim_matrix(const FsimParams& p);

// diag(e^{-i phi/4}, e^{+i phi/4}, e^{+i phi/4}, e^{-i phi/4}) = exp(-i phi/4 ZZ)
GateMatrix zz_gate_matrix(double phi);

/// Explicit per-cycle gate list: L x rotations, L-1 ZZ gates (odd bonds
/// then even bonds), L z rotations.
struct FloquetCircuit {
    GateMatrix x_gate;                  // same for every qubit
    std::vector<int> bond_order;        // bond index b couples qubits (b, b+1)
    std::vector<GateMatrix> zz_gates;   // aligned with bond_order
    std::vector<GateMatrix> z_gates;    // per qubit
};

FloquetCircuit build_circuit(const DisorderInstance& inst);

/// Cycle applier with the diagonal part of the drive precomputed.
/// `total_qubits` may exceed inst.length to leave ancilla qubits untouched
/// (the drive acts on qubits 0..length-1).
class FloquetEngine {
  public:
    explicit FloquetEngine(DisorderInstance inst, int total_qubits = 0);

    const DisorderInstance& instance() const { return inst_; }
    int total_qubits() const { return total_; }

    void cycle(StateVector& s) const;
    void inverse_cycle(StateVector& s) const;

  private:
    DisorderInstance inst_;
    int total_;
    GateMatrix rx_, rx_inv_;
    std::vector<cplx> diag_fwd_, diag_bwd_;
};

void apply_cycle(StateVector& s, const DisorderInstance& inst);
void apply_inverse_cycle(StateVector& s, const DisorderInstance& inst);

// Density-matrix layers, exposed separately so noise channels can be
// interleaved at the placement a protocol requires.
void dm_apply_x_layer(DensityMatrix& rho, const DisorderInstance& inst, bool inverse);
void dm_apply_z_layer(DensityMatrix& rho, const DisorderInstance& inst, bool inverse);
void apply_cycle(DensityMatrix& rho, const DisorderInstance& inst);
void apply_inverse_cycle(DensityMatrix& rho, const DisorderInstance& inst);

}  // namespace dtc
