#include "dtclab/model.hpp"

#include <cmath>
#include <stdexcept>

#include "dtclab/rng.hpp"

namespace dtc {

namespace {

// Substream tags: phi and h use separate streams so the uniform-coupling
// variant reproduces the h vector of the disordered one at equal seed.
constexpr std::uint64_t kPhiStream = 0;
constexpr std::uint64_t kHStream = 1;

std::vector<double> draw_fields(int length, std::uint64_t seed) {
    Rng rng = Rng::substream(seed, kHStream);
    std::vector<double> h(static_cast<std::size_t>(length));
    for (auto& v : h) v = rng.uniform(-kPi, kPi);
    return h;
}

}  // namespace

void DisorderInstance::validate() const {
    if (length < 2 || length > kMaxPureQubits) throw std::length_error("DisorderInstance: length out of range");
    if (g < 0.0 || g > 1.0) throw std::domain_error("DisorderInstance: g must lie in [0, 1]");
    if (phi.size() != static_cast<std::size_t>(length - 1) || h.size() != static_cast<std::size_t>(length))
        throw std::invalid_argument("DisorderInstance: phi/h sizes inconsistent with length");
}

DisorderInstance sample_disorder(int length, double g, std::uint64_t seed) {
    DisorderInstance inst;
    inst.length = length;
    inst.g = g;
    inst.seed = seed;
    inst.mode = CouplingMode::disordered;
    Rng rng = Rng::substream(seed, kPhiStream);
    inst.phi.resize(static_cast<std::size_t>(length - 1));
    for (auto& v : inst.phi) v = rng.uniform(-1.5 * kPi, -0.5 * kPi);
    inst.h = draw_fields(length, seed);
    inst.validate();
    return inst;
}

DisorderInstance uniform_instance(int length, double g, double phi_bar, std::uint64_t seed) {
    DisorderInstance inst;
    inst.length = length;
    inst.g = g;
    inst.seed = seed;
    inst.mode = CouplingMode::uniform;
    inst.phi.assign(static_cast<std::size_t>(length - 1), phi_bar);
    inst.h = draw_fields(length, seed);
    inst.validate();
    return inst;
}

DisorderInstance make_instance(int length, double g, std::uint64_t seed, std::vector<double> phi,
                               std::vector<double> h, CouplingMode mode) {
    DisorderInstance inst;
    inst.length = length;
    inst.g = g;
    inst.seed = seed;
    inst.phi = std::move(phi);
    inst.h = std::move(h);
    inst.mode = mode;
    inst.validate();
    return inst;
}

GateMatrix fsim_matrix(const FsimParams& p) {
    const double c = std::cos(p.theta), s = std::sin(p.theta);
    GateMatrix g;
    g.arity = 2;
    g.at(0, 0) = 1.0;
    g.at(1, 1) = std::polar(c, p.delta_plus + p.delta_minus);
    g.at(1, 2) = cplx(0.0, -1.0) * std::polar(s, p.delta_plus - p.delta_minus_off);
    g.at(2, 1) = cplx(0.0, -1.0) * std::polar(s, p.delta_plus + p.delta_minus_off);
    g.at(2, 2) = std::polar(c, p.delta_plus - p.delta_minus);
    g.at(3, 3) = std::polar(1.0, 2.0 * p.delta_plus - p.phi);
    return g;
}

GateMatrix zz_gate_matrix(double phi) {
    const cplx a = std::polar(1.0, -phi / 4.0);
    const cplx b = std::polar(1.0, phi / 4.0);
    GateMatrix g;
    g.arity = 2;
    g.at(0, 0) = a;
    g.at(1, 1) = b;
    g.at(2, 2) = b;
    g.at(3, 3) = a;
    return g;
}

FloquetCircuit build_circuit(const DisorderInstance& inst) {
    inst.validate();
    FloquetCircuit c;
    c.x_gate = x_rotation(kPi * inst.g);
    for (int b = 0; b < inst.length - 1; b += 2) c.bond_order.push_back(b);
    for (int b = 1; b < inst.length - 1; b += 2) c.bond_order.push_back(b);
    for (int b : c.bond_order) c.zz_gates.push_back(zz_gate_matrix(inst.phi[static_cast<std::size_t>(b)]));
    for (int q = 0; q < inst.length; ++q) c.z_gates.push_back(z_rotation(inst.h[static_cast<std::size_t>(q)]));
    return c;
}

FloquetEngine::FloquetEngine(DisorderInstance inst, int total_qubits)
    : inst_(std::move(inst)), total_(total_qubits == 0 ? inst_.length : total_qubits) {
    inst_.validate();
    if (total_ < inst_.length || total_ > kMaxPureQubits)
        throw std::length_error("FloquetEngine: total qubit count out of range");
    rx_ = x_rotation(kPi * inst_.g);
    rx_inv_ = x_rotation(-kPi * inst_.g);
    const int L = inst_.length;
    const std::uint64_t dim = std::uint64_t{1} << total_;
    diag_fwd_.resize(dim);
    diag_bwd_.resize(dim);
    // z_i = +1 for bit 0; qubit q sits at bit (total-1-q).
    for (std::uint64_t k = 0; k < dim; ++k) {
        double angle = 0.0;
        for (int b = 0; b < L - 1; ++b) {
            const bool z1 = (k >> (total_ - 1 - b)) & 1;
            const bool z2 = (k >> (total_ - 2 - b)) & 1;
            angle += (z1 != z2 ? -1.0 : 1.0) * inst_.phi[static_cast<std::size_t>(b)] / 4.0;
        }
        for (int q = 0; q < L; ++q) {
            const bool z = (k >> (total_ - 1 - q)) & 1;
            angle += (z ? -1.0 : 1.0) * inst_.h[static_cast<std::size_t>(q)] / 2.0;
        }
        diag_fwd_[k] = std::polar(1.0, -angle);
        diag_bwd_[k] = std::polar(1.0, angle);
    }
}

void FloquetEngine::cycle(StateVector& s) const {
    if (s.num_qubits() != total_) throw std::invalid_argument("FloquetEngine::cycle: size mismatch");
    for (int q = 0; q < inst_.length; ++q) s.apply_1q(q, rx_);
    s.apply_diagonal(diag_fwd_);
}

void FloquetEngine::inverse_cycle(StateVector& s) const {
    if (s.num_qubits() != total_) throw std::invalid_argument("FloquetEngine::inverse_cycle: size mismatch");
    s.apply_diagonal(diag_bwd_);
    for (int q = 0; q < inst_.length; ++q) s.apply_1q(q, rx_inv_);
}

void apply_cycle(StateVector& s, const DisorderInstance& inst) {
    FloquetEngine(inst, s.num_qubits()).cycle(s);
}

void apply_inverse_cycle(StateVector& s, const DisorderInstance& inst) {
    FloquetEngine(inst, s.num_qubits()).inverse_cycle(s);
}

void dm_apply_x_layer(DensityMatrix& rho, const DisorderInstance& inst, bool inverse) {
    const GateMatrix rx = x_rotation((inverse ? -1.0 : 1.0) * kPi * inst.g);
    for (int q = 0; q < inst.length; ++q) rho.apply_1q(q, rx);
}

void dm_apply_z_layer(DensityMatrix& rho, const DisorderInstance& inst, bool inverse) {
    const std::uint64_t d = rho.dim();
    std::vector<cplx> phases(d);
    const double sgn = inverse ? 1.0 : -1.0;
    for (std::uint64_t k = 0; k < d; ++k) {
        double angle = 0.0;
        for (int q = 0; q < inst.length; ++q) {
            const bool z = (k >> (inst.length - 1 - q)) & 1;
            angle += (z ? -1.0 : 1.0) * inst.h[static_cast<std::size_t>(q)] / 2.0;
        }
        phases[k] = std::polar(1.0, sgn * angle);
    }
    rho.apply_diagonal(phases);
}

void apply_cycle(DensityMatrix& rho, const DisorderInstance& inst) {
    if (rho.num_qubits() != inst.length) throw std::invalid_argument("apply_cycle: size mismatch");
    dm_apply_x_layer(rho, inst, false);
    for (int b = 0; b < inst.length - 1; ++b) rho.apply_zz(b, b + 1, inst.phi[static_cast<std::size_t>(b)]);
    dm_apply_z_layer(rho, inst, false);
}

void apply_inverse_cycle(DensityMatrix& rho, const DisorderInstance& inst) {
    if (rho.num_qubits() != inst.length) throw std::invalid_argument("apply_inverse_cycle: size mismatch");
    dm_apply_z_layer(rho, inst, true);
    for (int b = 0; b < inst.length - 1; ++b) rho.apply_zz(b, b + 1, -inst.phi[static_cast<std::size_t>(b)]);
    dm_apply_x_layer(rho, inst, true);
}

}  // namespace dtc
