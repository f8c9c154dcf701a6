#include "dtclab/state_vector.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dtc {

namespace kernel {

void apply1(std::vector<cplx>& a, std::uint64_t dim, std::uint64_t mask, const cplx u[4]) {
    const double u00r = u[0].real(), u00i = u[0].imag();
    const double u01r = u[1].real(), u01i = u[1].imag();
    const double u10r = u[2].real(), u10i = u[2].imag();
    const double u11r = u[3].real(), u11i = u[3].imag();
    const std::uint64_t lo = mask - 1, hi = ~lo;
    const std::uint64_t half = dim >> 1;
    for (std::uint64_t r = 0; r < half; ++r) {
        const std::uint64_t i0 = ((r & hi) << 1) | (r & lo);
        const std::uint64_t i1 = i0 | mask;
        const double a0r = a[i0].real(), a0i = a[i0].imag();
        const double a1r = a[i1].real(), a1i = a[i1].imag();
        a[i0] = cplx(u00r * a0r - u00i * a0i + u01r * a1r - u01i * a1i,
                     u00r * a0i + u00i * a0r + u01r * a1i + u01i * a1r);
        a[i1] = cplx(u10r * a0r - u10i * a0i + u11r * a1r - u11i * a1i,
                     u10r * a0i + u10i * a0r + u11r * a1i + u11i * a1r);
    }
}

void apply2(std::vector<cplx>& a, std::uint64_t dim, std::uint64_t mask_hi, std::uint64_t mask_lo, const cplx u[16]) {
    // mask_hi selects the gate's high bit (first qubit), mask_lo the low bit.
    const std::uint64_t small = std::min(mask_hi, mask_lo);
    const std::uint64_t big = std::max(mask_hi, mask_lo);
    const std::uint64_t lo_s = small - 1;
    const std::uint64_t lo_b = big - 1;
    const std::uint64_t quarter = dim >> 2;
    for (std::uint64_t r = 0; r < quarter; ++r) {
        std::uint64_t i = r;
        i = ((i & ~lo_s) << 1) | (i & lo_s);
        i = ((i & ~lo_b) << 1) | (i & lo_b);
        const std::uint64_t k0 = i;
        const std::uint64_t k1 = i | mask_lo;
        const std::uint64_t k2 = i | mask_hi;
        const std::uint64_t k3 = i | mask_lo | mask_hi;
        const cplx v0 = a[k0], v1 = a[k1], v2 = a[k2], v3 = a[k3];
        a[k0] = u[0] * v0 + u[1] * v1 + u[2] * v2 + u[3] * v3;
        a[k1] = u[4] * v0 + u[5] * v1 + u[6] * v2 + u[7] * v3;
        a[k2] = u[8] * v0 + u[9] * v1 + u[10] * v2 + u[11] * v3;
        a[k3] = u[12] * v0 + u[13] * v1 + u[14] * v2 + u[15] * v3;
    }
}

}  // namespace kernel

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxPureQubits)
        throw std::length_error("StateVector: qubit count must lie in [1, " + std::to_string(kMaxPureQubits) + "]");
    amps_.assign(dim(), cplx(0.0, 0.0));
    amps_[0] = 1.0;
}

StateVector StateVector::bitstring(const std::vector<int>& bits) {
    const int L = static_cast<int>(bits.size());
    StateVector s(L);
    std::uint64_t idx = 0;
    for (int q = 0; q < L; ++q) {
        const int b = bits[static_cast<std::size_t>(q)];
        if (b != 0 && b != 1) throw std::invalid_argument("bitstring: entries must be 0 or 1");
        if (b) idx |= s.bit_mask(q);
    }
    s.amps_[0] = 0.0;
    s.amps_[idx] = 1.0;
    return s;
}

StateVector StateVector::haar_random(int num_qubits, Rng& rng) {
    StateVector s(num_qubits);
    double n2 = 0.0;
    for (auto& a : s.amps_) {
        a = cplx(rng.gauss(), rng.gauss());
        n2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : s.amps_) a *= inv;
    return s;
}

std::uint64_t StateVector::bit_mask(int qubit) const {
    return std::uint64_t{1} << (num_qubits_ - 1 - qubit);
}

void StateVector::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= num_qubits_) throw std::out_of_range("qubit index out of range");
}

void StateVector::apply_1q(int qubit, const GateMatrix& u) {
    check_qubit(qubit);
    if (u.arity != 1) throw std::invalid_argument("apply_1q: gate arity must be 1");
    if (!u.is_unitary(1e-9)) throw std::invalid_argument("apply_1q: gate is not unitary");
    kernel::apply1(amps_, dim(), bit_mask(qubit), u.m.data());
}

void StateVector::apply_2q(int q1, int q2, const GateMatrix& u) {
    check_qubit(q1);
    check_qubit(q2);
    if (q1 == q2) throw std::invalid_argument("apply_2q: target qubits must differ");
    if (u.arity != 2) throw std::invalid_argument("apply_2q: gate arity must be 2");
    if (!u.is_unitary(1e-9)) throw std::invalid_argument("apply_2q: gate is not unitary");
    kernel::apply2(amps_, dim(), bit_mask(q1), bit_mask(q2), u.m.data());
}

void StateVector::apply_diagonal(std::span<const cplx> phases) {
    if (phases.size() != amps_.size()) throw std::invalid_argument("apply_diagonal: size mismatch");
    for (std::uint64_t k = 0; k < amps_.size(); ++k) amps_[k] *= phases[k];
}

double StateVector::expect_z(int qubit) const {
    check_qubit(qubit);
    const std::uint64_t m = bit_mask(qubit);
    double s = 0.0;
    for (std::uint64_t k = 0; k < amps_.size(); ++k) {
        const double p = std::norm(amps_[k]);
        s += (k & m) ? -p : p;
    }
    return s;
}

double StateVector::expect_zz(int i, int j) const {
    check_qubit(i);
    check_qubit(j);
    if (i == j) throw std::invalid_argument("expect_zz: qubits must differ");
    const std::uint64_t mi = bit_mask(i), mj = bit_mask(j);
    double s = 0.0;
    for (std::uint64_t k = 0; k < amps_.size(); ++k) {
        const double p = std::norm(amps_[k]);
        const bool flip = ((k & mi) != 0) != ((k & mj) != 0);
        s += flip ? -p : p;
    }
    return s;
}

double StateVector::expect_x(int qubit) const {
    check_qubit(qubit);
    const std::uint64_t m = bit_mask(qubit);
    const std::uint64_t lo = m - 1, hi = ~lo;
    double s = 0.0;
    const std::uint64_t half = dim() >> 1;
    for (std::uint64_t r = 0; r < half; ++r) {
        const std::uint64_t i0 = ((r & hi) << 1) | (r & lo);
        const std::uint64_t i1 = i0 | m;
        s += 2.0 * (std::conj(amps_[i0]) * amps_[i1]).real();
    }
    return s;
}

std::vector<double> StateVector::expect_z_all() const {
    std::vector<double> out(static_cast<std::size_t>(num_qubits_), 0.0);
    for (std::uint64_t k = 0; k < amps_.size(); ++k) {
        const double p = std::norm(amps_[k]);
        for (int q = 0; q < num_qubits_; ++q)
            out[static_cast<std::size_t>(q)] += (k & bit_mask(q)) ? -p : p;
    }
    return out;
}

double StateVector::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

cplx StateVector::inner(const StateVector& other) const {
    if (other.num_qubits_ != num_qubits_) throw std::invalid_argument("inner: size mismatch");
    cplx s = 0.0;
    for (std::uint64_t k = 0; k < amps_.size(); ++k) s += std::conj(amps_[k]) * other.amps_[k];
    return s;
}

}  // namespace dtc
