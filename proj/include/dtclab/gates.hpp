#pragma once

#include <array>
#include <complex>
#include <vector>

namespace dtc {

using cplx = std::complex<double>;

/// One- or two-qubit gate, dense row-major. Two-qubit basis order is
/// |q1 q2> with q1 the high bit: index = 2*b(q1) + b(q2).
struct GateMatrix {
    int arity = 1;
    std::array<cplx, 16> m{};

    int dim() const { return arity == 1 ? 2 : 4; }
    cplx at(int r, int c) const { return m[static_cast<std::size_t>(r * dim() + c)]; }
    cplx& at(int r, int c) { return m[static_cast<std::size_t>(r * dim() + c)]; }

    GateMatrix adjoint() const;
    // max_ij |(U^dag U - I)_ij|
    double unitarity_error() const;
    bool is_unitary(double tol = 1e-12) const { return unitarity_error() < tol; }
};

GateMatrix make_gate1(const std::array<cplx, 4>& entries);
GateMatrix make_gate2(const std::array<cplx, 16>& entries);
GateMatrix kron(const GateMatrix& a, const GateMatrix& b);

GateMatrix identity1();
GateMatrix pauli_x();
GateMatrix pauli_y();
GateMatrix pauli_z();
GateMatrix hadamard();

// exp(-i angle X/2) etc.
GateMatrix x_rotation(double angle);
GateMatrix y_rotation(double angle);
GateMatrix z_rotation(double angle);

// exp(-i angle (cos(axis) X + sin(axis) Y)/2): rotation about an equatorial axis.
GateMatrix equatorial_rotation(double axis, double angle);
// Pi rotation about an equatorial axis: -i (cos(axis) X + sin(axis) Y).
GateMatrix pi_rotation(double axis);

GateMatrix cz_gate();

/// Kraus decomposition of a single-qubit channel: rho -> sum_k K rho K^dag.
struct KrausChannel {
    std::vector<GateMatrix> operators;
    // max_ij |(sum K^dag K - I)_ij|
    double completeness_error() const;
    bool is_complete(double tol = 1e-12) const { return completeness_error() < tol; }
};

KrausChannel identity_channel();
// sqrt(1-p) I plus sqrt(p/3) {X, Y, Z}; Pauli error rate p in [0, 0.75].
KrausChannel depolarizing_channel(double p);

}  // namespace dtc
