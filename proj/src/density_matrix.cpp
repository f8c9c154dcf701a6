#include "dtclab/density_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dtc {

namespace {

GateMatrix conj_gate(const GateMatrix& u) {
    GateMatrix g = u;
    for (auto& e : g.m) e = std::conj(e);
    return g;
}

}  // namespace

DensityMatrix::DensityMatrix(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxMixedQubits)
        throw std::length_error("DensityMatrix: qubit count must lie in [1, " + std::to_string(kMaxMixedQubits) + "]");
    ent_.assign(flat_dim(), cplx(0.0, 0.0));
    ent_[0] = 1.0;
}

DensityMatrix DensityMatrix::from_state(const StateVector& psi) {
    if (psi.num_qubits() > kMaxMixedQubits)
        throw std::length_error("DensityMatrix::from_state: state too large for a dense operator");
    DensityMatrix rho(psi.num_qubits());
    const auto a = psi.amps();
    const std::uint64_t d = rho.dim();
    for (std::uint64_t r = 0; r < d; ++r)
        for (std::uint64_t c = 0; c < d; ++c) rho.ent_[(r << rho.num_qubits_) | c] = a[r] * std::conj(a[c]);
    return rho;
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
    DensityMatrix rho(num_qubits);
    rho.ent_.assign(rho.flat_dim(), cplx(0.0, 0.0));
    const double w = 1.0 / static_cast<double>(rho.dim());
    for (std::uint64_t r = 0; r < rho.dim(); ++r) rho.ent_[(r << num_qubits) | r] = w;
    return rho;
}

void DensityMatrix::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= num_qubits_) throw std::out_of_range("qubit index out of range");
}

void DensityMatrix::apply_1q(int qubit, const GateMatrix& u) {
    check_qubit(qubit);
    if (u.arity != 1) throw std::invalid_argument("apply_1q: gate arity must be 1");
    if (!u.is_unitary(1e-9)) throw std::invalid_argument("apply_1q: gate is not unitary");
    kernel::apply1(ent_, flat_dim(), row_mask(qubit), u.m.data());
    kernel::apply1(ent_, flat_dim(), col_mask(qubit), conj_gate(u).m.data());
}

void DensityMatrix::apply_2q(int q1, int q2, const GateMatrix& u) {
    check_qubit(q1);
    check_qubit(q2);
    if (q1 == q2) throw std::invalid_argument("apply_2q: target qubits must differ");
    if (u.arity != 2) throw std::invalid_argument("apply_2q: gate arity must be 2");
    if (!u.is_unitary(1e-9)) throw std::invalid_argument("apply_2q: gate is not unitary");
    kernel::apply2(ent_, flat_dim(), row_mask(q1), row_mask(q2), u.m.data());
    kernel::apply2(ent_, flat_dim(), col_mask(q1), col_mask(q2), conj_gate(u).m.data());
}

void DensityMatrix::apply_diagonal(std::span<const cplx> phases) {
    if (phases.size() != dim()) throw std::invalid_argument("apply_diagonal: size mismatch");
    const std::uint64_t d = dim();
    for (std::uint64_t r = 0; r < d; ++r) {
        const cplx pr = phases[r];
        cplx* row = &ent_[r << num_qubits_];
        for (std::uint64_t c = 0; c < d; ++c) row[c] *= pr * std::conj(phases[c]);
    }
}

void DensityMatrix::apply_zz(int q1, int q2, double phi) {
    check_qubit(q1);
    check_qubit(q2);
    if (q1 == q2) throw std::invalid_argument("apply_zz: target qubits must differ");
    const cplx e_minus = std::polar(1.0, -phi / 4.0);  // aligned pair
    const cplx e_plus = std::polar(1.0, phi / 4.0);    // anti-aligned pair
    const std::uint64_t m1 = col_mask(q1), m2 = col_mask(q2);
    const std::uint64_t d = dim();
    auto phase_of = [&](std::uint64_t k) { return (((k & m1) != 0) != ((k & m2) != 0)) ? e_plus : e_minus; };
    for (std::uint64_t r = 0; r < d; ++r) {
        const cplx pr = phase_of(r);
        cplx* row = &ent_[r << num_qubits_];
        for (std::uint64_t c = 0; c < d; ++c) row[c] *= pr * std::conj(phase_of(c));
    }
}

void DensityMatrix::apply_channel_1q(int qubit, const KrausChannel& ch) {
    check_qubit(qubit);
    if (!ch.is_complete(1e-9)) throw std::invalid_argument("apply_channel_1q: Kraus set is not trace preserving");
    std::vector<cplx> acc(flat_dim(), cplx(0.0, 0.0));
    for (const auto& k : ch.operators) {
        if (k.arity != 1) throw std::invalid_argument("apply_channel_1q: operators must be one-qubit");
        std::vector<cplx> term = ent_;
        kernel::apply1(term, flat_dim(), row_mask(qubit), k.m.data());
        kernel::apply1(term, flat_dim(), col_mask(qubit), conj_gate(k).m.data());
        for (std::uint64_t i = 0; i < acc.size(); ++i) acc[i] += term[i];
    }
    ent_ = std::move(acc);
}

void DensityMatrix::depolarize(int qubit, double p) {
    check_qubit(qubit);
    if (p < 0.0 || p > 0.75) throw std::domain_error("depolarize: p must lie in [0, 0.75]");
    if (p == 0.0) return;
    const double keep = 1.0 - 2.0 * p / 3.0;   // diagonal-in-qubit entries
    const double mix = 2.0 * p / 3.0;          //   paired with the double flip
    const double damp = 1.0 - 4.0 * p / 3.0;   // off-diagonal-in-qubit entries
    const std::uint64_t mr = row_mask(qubit), mc = col_mask(qubit);
    const std::uint64_t lo_c = mc - 1;
    const std::uint64_t lo_r = mr - 1;
    const std::uint64_t quarter = flat_dim() >> 2;
    for (std::uint64_t t = 0; t < quarter; ++t) {
        std::uint64_t i = t;
        i = ((i & ~lo_c) << 1) | (i & lo_c);
        i = ((i & ~lo_r) << 1) | (i & lo_r);
        const std::uint64_t i00 = i;            // row bit 0, col bit 0
        const std::uint64_t i01 = i | mc;       // row bit 0, col bit 1
        const std::uint64_t i10 = i | mr;       // row bit 1, col bit 0
        const std::uint64_t i11 = i | mr | mc;  // row bit 1, col bit 1
        const cplx a = ent_[i00], d = ent_[i11];
        ent_[i00] = keep * a + mix * d;
        ent_[i11] = keep * d + mix * a;
        ent_[i01] *= damp;
        ent_[i10] *= damp;
    }
}

double DensityMatrix::expect_z(int qubit) const {
    check_qubit(qubit);
    const std::uint64_t m = col_mask(qubit);
    const std::uint64_t d = dim();
    double s = 0.0;
    for (std::uint64_t r = 0; r < d; ++r) {
        const double v = ent_[(r << num_qubits_) | r].real();
        s += (r & m) ? -v : v;
    }
    return s;
}

double DensityMatrix::expect_zz(int i, int j) const {
    check_qubit(i);
    check_qubit(j);
    if (i == j) throw std::invalid_argument("expect_zz: qubits must differ");
    const std::uint64_t mi = col_mask(i), mj = col_mask(j);
    const std::uint64_t d = dim();
    double s = 0.0;
    for (std::uint64_t r = 0; r < d; ++r) {
        const double v = ent_[(r << num_qubits_) | r].real();
        const bool flip = ((r & mi) != 0) != ((r & mj) != 0);
        s += flip ? -v : v;
    }
    return s;
}

std::vector<double> DensityMatrix::expect_z_all() const {
    std::vector<double> out(static_cast<std::size_t>(num_qubits_), 0.0);
    const std::uint64_t d = dim();
    for (std::uint64_t r = 0; r < d; ++r) {
        const double v = ent_[(r << num_qubits_) | r].real();
        for (int q = 0; q < num_qubits_; ++q)
            out[static_cast<std::size_t>(q)] += (r & col_mask(q)) ? -v : v;
    }
    return out;
}

double DensityMatrix::trace_real() const {
    double s = 0.0;
    for (std::uint64_t r = 0; r < dim(); ++r) s += ent_[(r << num_qubits_) | r].real();
    return s;
}

double DensityMatrix::purity() const {
    double s = 0.0;
    for (const auto& e : ent_) s += std::norm(e);
    return s;
}

double DensityMatrix::hermiticity_error() const {
    const std::uint64_t d = dim();
    double err = 0.0;
    for (std::uint64_t r = 0; r < d; ++r)
        for (std::uint64_t c = r; c < d; ++c)
            err = std::max(err, std::abs(ent_[(r << num_qubits_) | c] - std::conj(ent_[(c << num_qubits_) | r])));
    return err;
}

double DensityMatrix::trace_error() const { return std::abs(trace_real() - 1.0); }

}  // namespace dtc
