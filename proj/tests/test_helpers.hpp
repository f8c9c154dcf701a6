#pragma once

// Oracle-side helpers shared by the unit and acceptance suites. Everything
// here is built independently of the engine code paths it checks: dense
// matrices are assembled by Kronecker products and applied with Eigen.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "dtclab/dense.hpp"
#include "dtclab/gates.hpp"
#include "dtclab/model.hpp"

namespace oracle {

using dtc::CMat;
using dtc::cplx;

inline CMat mat2(const dtc::GateMatrix& g) {
    CMat m(2, 2);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) m(r, c) = g.at(r, c);
    return m;
}

inline CMat mat4(const dtc::GateMatrix& g) {
    CMat m(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = g.at(r, c);
    return m;
}

inline CMat kron(const CMat& a, const CMat& b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// One-qubit operator embedded at `qubit` in an L-qubit register (qubit 0 is
// the most significant index bit).
inline CMat embed1(int L, int qubit, const CMat& op) {
    CMat out = CMat::Identity(1, 1);
    for (int q = 0; q < L; ++q) out = kron(out, q == qubit ? op : CMat::Identity(2, 2));
    return out;
}

inline CMat embed2(int L, int q1, int q2, const CMat& op4) {
    // generic two-site embedding via basis action
    const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << L);
    CMat out = CMat::Zero(d, d);
    for (Eigen::Index col = 0; col < d; ++col) {
        const int b1 = static_cast<int>((col >> (L - 1 - q1)) & 1);
        const int b2 = static_cast<int>((col >> (L - 1 - q2)) & 1);
        const int in = 2 * b1 + b2;
        for (int outi = 0; outi < 4; ++outi) {
            const cplx v = op4(outi, in);
            if (v == cplx(0.0, 0.0)) continue;
            Eigen::Index row = col;
            row &= ~(Eigen::Index{1} << (L - 1 - q1));
            row &= ~(Eigen::Index{1} << (L - 1 - q2));
            if (outi & 2) row |= Eigen::Index{1} << (L - 1 - q1);
            if (outi & 1) row |= Eigen::Index{1} << (L - 1 - q2);
            out(row, col) += v;
        }
    }
    return out;
}

inline CMat pauli(char p) {
    CMat m(2, 2);
    switch (p) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, cplx(0, -1), cplx(0, 1), 0; break;
        case 'Z': m << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("pauli: unknown label");
    }
    return m;
}

// Dense cycle unitary assembled gate by gate from the instance definition,
// independent of FloquetEngine's fused diagonal path.
inline CMat cycle_matrix(const dtc::DisorderInstance& inst) {
    const int L = inst.length;
    const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << L);
    CMat u = CMat::Identity(d, d);
    const CMat rx = mat2(dtc::x_rotation(dtc::kPi * inst.g));
    for (int q = 0; q < L; ++q) u = embed1(L, q, rx) * u;
    for (int b = 0; b < L - 1; ++b) u = embed2(L, b, b + 1, mat4(dtc::zz_gate_matrix(inst.phi[b]))) * u;
    for (int q = 0; q < L; ++q) u = embed1(L, q, mat2(dtc::z_rotation(inst.h[q]))) * u;
    return u;
}

// U_z[phi, h] = exp(-i sum_b (phi_b/4) ZZ - i sum_q (h_q/2) Z): diagonal.
inline CMat uz_matrix(int L, const std::vector<double>& phi, const std::vector<double>& h) {
    const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << L);
    CMat u = CMat::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        double angle = 0.0;
        for (int b = 0; b + 1 < L; ++b) {
            const double z1 = ((k >> (L - 1 - b)) & 1) ? -1.0 : 1.0;
            const double z2 = ((k >> (L - 2 - b)) & 1) ? -1.0 : 1.0;
            angle += phi[static_cast<std::size_t>(b)] / 4.0 * z1 * z2;
        }
        for (int q = 0; q < L; ++q) {
            const double z = ((k >> (L - 1 - q)) & 1) ? -1.0 : 1.0;
            angle += h[static_cast<std::size_t>(q)] / 2.0 * z;
        }
        u(k, k) = std::polar(1.0, -angle);
    }
    return u;
}

// U_x[angle] = exp(-i (angle/2) sum_q X_q)
inline CMat ux_matrix(int L, double angle) {
    const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << L);
    CMat u = CMat::Identity(d, d);
    const CMat rx = mat2(dtc::x_rotation(angle));
    for (int q = 0; q < L; ++q) u = embed1(L, q, rx) * u;
    return u;
}

inline CMat vec_outer(const Eigen::VectorXcd& v) { return v * v.adjoint(); }

}  // namespace oracle
