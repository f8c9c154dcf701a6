#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dtclab/gates.hpp"
#include "dtclab/rng.hpp"

namespace dtc {

inline constexpr int kMaxPureQubits = 22;

namespace kernel {

// In-place gate kernels on a flat amplitude array of size `dim` (a power of
// two). `mask` selects the target bit. Shared between the pure-state and
// density-matrix engines (the latter runs them on row and column bits).
void apply1(std::vector<cplx>& a, std::uint64_t dim, std::uint64_t mask, const cplx u[4]);
void apply2(std::vector<cplx>& a, std::uint64_t dim, std::uint64_t mask_hi, std::uint64_t mask_lo, const cplx u[16]);

}  // namespace kernel

/// Dense complex amplitudes over L qubits. Qubit 0 is the most significant
/// bit of the amplitude index, so |q0 q1 ... > reads left to right.
class StateVector {
  public:
    explicit StateVector(int num_qubits);  // |0...0>

    static StateVector bitstring(const std::vector<int>& bits);
    static StateVector haar_random(int num_qubits, Rng& rng);

    int num_qubits() const { return num_qubits_; }
    std::uint64_t dim() const { return std::uint64_t{1} << num_qubits_; }
    std::span<const cplx> amps() const { return amps_; }
    std::span<cplx> amps_mut() { return amps_; }
    cplx amp(std::uint64_t k) const { return amps_[k]; }

    std::uint64_t bit_mask(int qubit) const;

    void apply_1q(int qubit, const GateMatrix& u);
    void apply_2q(int q1, int q2, const GateMatrix& u);
    // Multiply amplitude k by phases[k]; phases must have size 2^L.
    void apply_diagonal(std::span<const cplx> phases);

    double expect_z(int qubit) const;
    double expect_zz(int i, int j) const;
    double expect_x(int qubit) const;
    std::vector<double> expect_z_all() const;

    double norm_sq() const;
    // <this|other>
    cplx inner(const StateVector& other) const;

  private:
    int num_qubits_;
    std::vector<cplx> amps_;

    void check_qubit(int qubit) const;
};

}  // namespace dtc
