#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dtclab/gates.hpp"
#include "dtclab/state_vector.hpp"

namespace dtc {

inline constexpr int kMaxMixedQubits = 12;

/// Dense 2^L x 2^L operator (row-major) for channel-based evolution.
/// Internally the matrix is treated as a 2L-bit amplitude array so the
/// pure-state gate kernels can run on row and column bits.
class DensityMatrix {
  public:
    explicit DensityMatrix(int num_qubits);  // |0..0><0..0|

    static DensityMatrix from_state(const StateVector& psi);
    static DensityMatrix maximally_mixed(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    std::uint64_t dim() const { return std::uint64_t{1} << num_qubits_; }
    std::span<const cplx> entries() const { return ent_; }
    cplx entry(std::uint64_t r, std::uint64_t c) const { return ent_[(r << num_qubits_) | c]; }
    cplx& entry_mut(std::uint64_t r, std::uint64_t c) { return ent_[(r << num_qubits_) | c]; }

    void apply_1q(int qubit, const GateMatrix& u);
    void apply_2q(int q1, int q2, const GateMatrix& u);
    // rho -> D rho D^dag for a diagonal unitary with the given phases (size 2^L).
    void apply_diagonal(std::span<const cplx> phases);
    // Diagonal two-qubit phase exp(-i phi/4 Z Z) on a bond; cheap single pass.
    void apply_zz(int q1, int q2, double phi);

    void apply_channel_1q(int qubit, const KrausChannel& ch);
    // Single fused pass: rho -> (1-4p/3) rho + (4p/3)(I/2 (x) Tr_q rho).
    void depolarize(int qubit, double p);

    double expect_z(int qubit) const;
    double expect_zz(int i, int j) const;
    std::vector<double> expect_z_all() const;

    double trace_real() const;
    double purity() const;  // Tr rho^2 for Hermitian rho
    double hermiticity_error() const;
    double trace_error() const;

  private:
    int num_qubits_;
    std::vector<cplx> ent_;

    std::uint64_t row_mask(int qubit) const { return std::uint64_t{1} << (2 * num_qubits_ - 1 - qubit); }
    std::uint64_t col_mask(int qubit) const { return std::uint64_t{1} << (num_qubits_ - 1 - qubit); }
    std::uint64_t flat_dim() const { return std::uint64_t{1} << (2 * num_qubits_); }
    void check_qubit(int qubit) const;
};

}  // namespace dtc
