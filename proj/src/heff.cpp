#include "dtclab/heff.hpp"

#include <cmath>
#include <stdexcept>

namespace dtc {

namespace {

constexpr int kMaxDenseQubits = 12;

void add_pauli_term(CMat& h, int length, double coeff, std::span<const std::pair<int, char>> factors) {
    if (coeff == 0.0) return;
    const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << length);
    // Each Pauli string has exactly one nonzero per column.
    for (Eigen::Index col = 0; col < d; ++col) {
        std::uint64_t row = static_cast<std::uint64_t>(col);
        cplx amp = coeff;
        for (const auto& [q, p] : factors) {
            const std::uint64_t mask = std::uint64_t{1} << (length - 1 - q);
            const bool bit = (static_cast<std::uint64_t>(col) & mask) != 0;
            switch (p) {
                case 'X':
                    row ^= mask;
                    break;
                case 'Y':
                    row ^= mask;
                    amp *= bit ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
                    break;
                case 'Z':
                    amp *= bit ? -1.0 : 1.0;
                    break;
                default:
                    throw std::invalid_argument("add_pauli_term: unknown factor");
            }
        }
        h(static_cast<Eigen::Index>(row), col) += amp;
    }
}

double epsilon_of(const DisorderInstance& inst) { return 0.5 * kPi * (1.0 - inst.g); }

}  // namespace

CMat EffectiveHamiltonian::dense() const {
    if (length > kMaxDenseQubits) throw std::length_error("EffectiveHamiltonian::dense: chain too long");
    const auto d = static_cast<Eigen::Index>(std::uint64_t{1} << length);
    CMat h = CMat::Zero(d, d);
    for (int n = 0; n < length; ++n) {
        add_pauli_term(h, length, x_coeff[static_cast<std::size_t>(n)], {{std::pair{n, 'X'}}});
        add_pauli_term(h, length, y_coeff[static_cast<std::size_t>(n)], {{std::pair{n, 'Y'}}});
    }
    for (int n = 0; n < length - 1; ++n)
        add_pauli_term(h, length, zz_coeff[static_cast<std::size_t>(n)],
                       {{std::pair{n, 'Z'}, std::pair{n + 1, 'Z'}}});
    if (disordered_variant) {
        for (int n = 0; n < length; ++n) {
            for (int nb : {n - 1, n + 1}) {
                if (nb < 0 || nb >= length) continue;
                add_pauli_term(h, length, xz_coeff[static_cast<std::size_t>(n)],
                               {{std::pair{n, 'X'}, std::pair{nb, 'Z'}}});
                add_pauli_term(h, length, yz_coeff[static_cast<std::size_t>(n)],
                               {{std::pair{n, 'Y'}, std::pair{nb, 'Z'}}});
            }
        }
    }
    return h;
}

EffectiveHamiltonian heff_uniform(const DisorderInstance& inst) {
    if (inst.mode != CouplingMode::uniform)
        throw std::invalid_argument("heff_uniform: requires a uniform-coupling instance");
    inst.validate();
    EffectiveHamiltonian he;
    he.length = inst.length;
    he.epsilon = epsilon_of(inst);
    he.disordered_variant = false;
    he.x_coeff.resize(static_cast<std::size_t>(inst.length));
    he.y_coeff.resize(static_cast<std::size_t>(inst.length));
    he.xz_coeff.assign(static_cast<std::size_t>(inst.length), 0.0);
    he.yz_coeff.assign(static_cast<std::size_t>(inst.length), 0.0);
    for (int n = 0; n < inst.length; ++n) {
        const double hn = inst.h[static_cast<std::size_t>(n)];
        he.x_coeff[static_cast<std::size_t>(n)] = -0.5 * he.epsilon * (1.0 + std::cos(hn));
        he.y_coeff[static_cast<std::size_t>(n)] = -0.5 * he.epsilon * std::sin(hn);
    }
    he.zz_coeff.resize(static_cast<std::size_t>(inst.length - 1));
    for (int b = 0; b < inst.length - 1; ++b)
        he.zz_coeff[static_cast<std::size_t>(b)] = inst.phi[static_cast<std::size_t>(b)] / 4.0;
    return he;
}

EffectiveHamiltonian heff_disordered(const DisorderInstance& inst) {
    if (inst.mode != CouplingMode::disordered)
        throw std::invalid_argument("heff_disordered: requires a disordered-coupling instance");
    inst.validate();
    EffectiveHamiltonian he;
    he.length = inst.length;
    he.epsilon = epsilon_of(inst);
    he.disordered_variant = true;
    he.x_coeff.resize(static_cast<std::size_t>(inst.length));
    he.y_coeff.assign(static_cast<std::size_t>(inst.length), 0.0);
    he.xz_coeff.resize(static_cast<std::size_t>(inst.length));
    he.yz_coeff.resize(static_cast<std::size_t>(inst.length));
    for (int n = 0; n < inst.length; ++n) {
        const double hn = inst.h[static_cast<std::size_t>(n)];
        he.x_coeff[static_cast<std::size_t>(n)] = -0.5 * he.epsilon;
        he.yz_coeff[static_cast<std::size_t>(n)] = -0.5 * he.epsilon * std::cos(hn);
        he.xz_coeff[static_cast<std::size_t>(n)] = 0.5 * he.epsilon * std::sin(hn);
    }
    const auto dphi = delta_phi_of(inst);
    he.zz_coeff.resize(static_cast<std::size_t>(inst.length - 1));
    for (int b = 0; b < inst.length - 1; ++b) he.zz_coeff[static_cast<std::size_t>(b)] = dphi[static_cast<std::size_t>(b)] / 4.0;
    return he;
}

double bitstring_energy_uniform(const std::vector<int>& bits, double phi_bar) {
    double e = 0.0;
    for (std::size_t n = 0; n + 1 < bits.size(); ++n)
        e += (phi_bar / 4.0) * (bits[n] == bits[n + 1] ? 1.0 : -1.0);
    return e;
}

double bitstring_energy_disordered(const std::vector<int>& bits, std::span<const double> delta_phi) {
    if (delta_phi.size() + 1 != bits.size())
        throw std::invalid_argument("bitstring_energy_disordered: bond count mismatch");
    double e = 0.0;
    for (std::size_t n = 0; n + 1 < bits.size(); ++n)
        e += (delta_phi[n] / 4.0) * (bits[n] == bits[n + 1] ? 1.0 : -1.0);
    return e;
}

std::vector<double> delta_phi_of(const DisorderInstance& inst) {
    std::vector<double> d(inst.phi.size());
    for (std::size_t b = 0; b < d.size(); ++b) d[b] = inst.phi[b] + kPi;
    return d;
}

DisorderInstance GaugeMappedInstance::as_instance() const {
    return make_instance(original.length, original.g, original.seed, phi_mapped, h_mapped,
                         CouplingMode::disordered);
}

GaugeMappedInstance gauge_map(const DisorderInstance& inst, const std::vector<int>& bits) {
    if (inst.mode != CouplingMode::disordered)
        throw std::invalid_argument("gauge_map: requires a disordered-coupling instance");
    inst.validate();
    if (bits.size() != static_cast<std::size_t>(inst.length))
        throw std::invalid_argument("gauge_map: bitstring length mismatch");
    GaugeMappedInstance out;
    out.original = inst;
    out.bits = bits;
    const int L = inst.length;
    out.phi_mapped.resize(static_cast<std::size_t>(L - 1));
    out.h_mapped.resize(static_cast<std::size_t>(L));

    // Conjugating by X_s flips phi on domain-wall bonds and h on flipped
    // sites. Bonds pushed out of range by the sign flip are brought back
    // with a -2pi shift, which costs a pi shift of h on both bond endpoints.
    std::vector<int> fold_count(static_cast<std::size_t>(L), 0);
    for (int b = 0; b < L - 1; ++b) {
        const bool wall = bits[static_cast<std::size_t>(b)] != bits[static_cast<std::size_t>(b + 1)];
        double p = (wall ? -1.0 : 1.0) * inst.phi[static_cast<std::size_t>(b)];
        if (wall) {
            p -= 2.0 * kPi;
            ++fold_count[static_cast<std::size_t>(b)];
            ++fold_count[static_cast<std::size_t>(b + 1)];
        }
        out.phi_mapped[static_cast<std::size_t>(b)] = p;
    }
    for (int q = 0; q < L; ++q) {
        double hh = (bits[static_cast<std::size_t>(q)] ? -1.0 : 1.0) * inst.h[static_cast<std::size_t>(q)];
        hh += kPi * fold_count[static_cast<std::size_t>(q)];
        // wrap to (-pi, pi]; a 2pi shift of h is a global phase of the cycle
        hh = std::remainder(hh, 2.0 * kPi);
        if (hh <= -kPi) hh += 2.0 * kPi;
        out.h_mapped[static_cast<std::size_t>(q)] = hh;
    }
    return out;
}

double bch_residual(const DisorderInstance& inst) {
    if (inst.mode != CouplingMode::uniform)
        throw std::invalid_argument("bch_residual: requires a uniform-coupling instance");
    if (inst.length > 10) throw std::length_error("bch_residual: dense comparison limited to L <= 10");
    FloquetEngine eng(inst);
    const CMat u2 = matrix_of(inst.length, [&](StateVector& s) {
        eng.cycle(s);
        eng.cycle(s);
    });
    const CMat target = expi_hermitian(heff_uniform(inst).dense(), -2.0);
    return phase_aligned_distance(u2, target);
}

}  // namespace dtc
