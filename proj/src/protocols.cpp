#include "dtclab/protocols.hpp"

#include <cmath>
#include <stdexcept>

namespace dtc {

namespace {

constexpr int kMaxCycles = 10000;

void check_bits(const DisorderInstance& inst, const std::vector<int>& bits) {
    if (bits.size() != static_cast<std::size_t>(inst.length))
        throw std::invalid_argument("bitstring length does not match the instance");
    for (int b : bits)
        if (b != 0 && b != 1) throw std::invalid_argument("bitstring entries must be 0 or 1");
}

std::vector<int> bond_sequence(int length) {
    std::vector<int> order;
    for (int b = 0; b < length - 1; b += 2) order.push_back(b);
    for (int b = 1; b < length - 1; b += 2) order.push_back(b);
    return order;
}

void depolarize_all(DensityMatrix& rho, int length, double p) {
    for (int q = 0; q < length; ++q) rho.depolarize(q, p);
}

}  // namespace

void NoiseModel::validate() const {
    if (p < 0.0 || p > 0.75) throw std::domain_error("NoiseModel: p must lie in [0, 0.75]");
}

void noisy_cycle(DensityMatrix& rho, const DisorderInstance& inst, const NoiseModel& noise) {
    noise.validate();
    if (noise.placement == NoiseModel::Placement::symmetric_per_cycle) {
        depolarize_all(rho, inst.length, noise.p / 2.0);
        apply_cycle(rho, inst);
        depolarize_all(rho, inst.length, noise.p / 2.0);
        return;
    }
    dm_apply_x_layer(rho, inst, false);
    for (int b : bond_sequence(inst.length)) {
        rho.apply_zz(b, b + 1, inst.phi[static_cast<std::size_t>(b)]);
        rho.depolarize(b, noise.p);
        rho.depolarize(b + 1, noise.p);
    }
    dm_apply_z_layer(rho, inst, false);
}

void noisy_inverse_cycle(DensityMatrix& rho, const DisorderInstance& inst, const NoiseModel& noise) {
    noise.validate();
    if (noise.placement == NoiseModel::Placement::symmetric_per_cycle) {
        depolarize_all(rho, inst.length, noise.p / 2.0);
        apply_inverse_cycle(rho, inst);
        depolarize_all(rho, inst.length, noise.p / 2.0);
        return;
    }
    dm_apply_z_layer(rho, inst, true);
    auto order = bond_sequence(inst.length);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int b = *it;
        rho.apply_zz(b, b + 1, -inst.phi[static_cast<std::size_t>(b)]);
        rho.depolarize(b, noise.p);
        rho.depolarize(b + 1, noise.p);
    }
    dm_apply_x_layer(rho, inst, true);
}

void noisy_cycle_adjoint(DensityMatrix& rho, const DisorderInstance& inst, const NoiseModel& noise) {
    noise.validate();
    // Adjoint reverses the composition; depolarizing factors are
    // self-adjoint and unitary conjugation U(.)U^dag turns into U^dag(.)U.
    if (noise.placement == NoiseModel::Placement::symmetric_per_cycle) {
        depolarize_all(rho, inst.length, noise.p / 2.0);
        apply_inverse_cycle(rho, inst);
        depolarize_all(rho, inst.length, noise.p / 2.0);
        return;
    }
    dm_apply_z_layer(rho, inst, true);
    auto order = bond_sequence(inst.length);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const int b = *it;
        rho.depolarize(b, noise.p);
        rho.depolarize(b + 1, noise.p);
        rho.apply_zz(b, b + 1, -inst.phi[static_cast<std::size_t>(b)]);
    }
    dm_apply_x_layer(rho, inst, true);
}

std::vector<AutocorrSeries> run_autocorrelator(const DisorderInstance& inst, const std::vector<int>& bits,
                                               int t_max) {
    inst.validate();
    check_bits(inst, bits);
    if (t_max < 0 || t_max > kMaxCycles) throw std::invalid_argument("run_autocorrelator: t_max out of range");
    const int L = inst.length;
    std::vector<AutocorrSeries> out(static_cast<std::size_t>(L));
    for (int q = 0; q < L; ++q) {
        out[static_cast<std::size_t>(q)].qubit = q;
        out[static_cast<std::size_t>(q)].values.reserve(static_cast<std::size_t>(t_max) + 1);
    }
    StateVector s = StateVector::bitstring(bits);
    FloquetEngine eng(inst);
    for (int t = 0; t <= t_max; ++t) {
        if (t > 0) eng.cycle(s);
        const auto z = s.expect_z_all();
        for (int q = 0; q < L; ++q) {
            const double z0 = bits[static_cast<std::size_t>(q)] ? -1.0 : 1.0;
            out[static_cast<std::size_t>(q)].values.push_back(z0 * z[static_cast<std::size_t>(q)]);
        }
    }
    return out;
}

EchoResult run_echo_normalization(const DisorderInstance& inst, const std::vector<int>& bits, int t,
                                  const NoiseModel& noise) {
    inst.validate();
    check_bits(inst, bits);
    noise.validate();
    if (t < 0 || t > kMaxCycles) throw std::invalid_argument("run_echo_normalization: t out of range");
    const int L = inst.length;
    EchoResult res;
    if (!noise.enabled()) {
        // forward and backward evolutions cancel exactly
        res.a0.assign(static_cast<std::size_t>(L), 1.0);
        res.radicand.assign(static_cast<std::size_t>(L), 1.0);
        return res;
    }
    DensityMatrix rho = DensityMatrix::from_state(StateVector::bitstring(bits));
    for (int k = 0; k < t; ++k) noisy_cycle(rho, inst, noise);
    for (int k = 0; k < t; ++k) noisy_inverse_cycle(rho, inst, noise);
    const auto z = rho.expect_z_all();
    res.a0.resize(static_cast<std::size_t>(L));
    res.radicand.resize(static_cast<std::size_t>(L));
    for (int q = 0; q < L; ++q) {
        const double z0 = bits[static_cast<std::size_t>(q)] ? -1.0 : 1.0;
        const double r = z0 * z[static_cast<std::size_t>(q)];
        res.radicand[static_cast<std::size_t>(q)] = r;
        if (r < -1e-12) res.flagged = true;
        res.a0[static_cast<std::size_t>(q)] = std::sqrt(std::max(0.0, r));
    }
    return res;
}

ScramblerSpec build_scrambler(int length, int depth, std::uint64_t seed) {
    if (length < 2 || length > kMaxPureQubits) throw std::length_error("build_scrambler: length out of range");
    if (depth < 0) throw std::invalid_argument("build_scrambler: depth must be non-negative");
    ScramblerSpec spec;
    spec.length = length;
    spec.depth = depth;
    spec.seed = seed;
    Rng rng = Rng::substream(seed, 0x5c7a);
    spec.layers.resize(static_cast<std::size_t>(depth));
    for (int k = 0; k < depth; ++k) {
        auto& layer = spec.layers[static_cast<std::size_t>(k)];
        layer.cz_parity = k % 2;
        layer.axis.resize(static_cast<std::size_t>(length));
        layer.angle.resize(static_cast<std::size_t>(length));
        for (int q = 0; q < length; ++q) {
            layer.axis[static_cast<std::size_t>(q)] = rng.uniform(0.0, 2.0 * kPi);
            layer.angle[static_cast<std::size_t>(q)] = rng.uniform(0.4 * kPi, 0.6 * kPi);
        }
    }
    return spec;
}

void apply_scrambler(StateVector& s, const ScramblerSpec& spec) {
    if (s.num_qubits() < spec.length) throw std::invalid_argument("apply_scrambler: state too small");
    const GateMatrix cz = cz_gate();
    for (const auto& layer : spec.layers) {
        for (int q = 0; q < spec.length; ++q)
            s.apply_1q(q, equatorial_rotation(layer.axis[static_cast<std::size_t>(q)],
                                              layer.angle[static_cast<std::size_t>(q)]));
        for (int b = layer.cz_parity; b < spec.length - 1; b += 2) s.apply_2q(b, b + 1, cz);
    }
}

void apply_scrambler(DensityMatrix& rho, const ScramblerSpec& spec, const NoiseModel& noise) {
    if (rho.num_qubits() < spec.length) throw std::invalid_argument("apply_scrambler: state too small");
    noise.validate();
    const GateMatrix cz = cz_gate();
    for (const auto& layer : spec.layers) {
        for (int q = 0; q < spec.length; ++q)
            rho.apply_1q(q, equatorial_rotation(layer.axis[static_cast<std::size_t>(q)],
                                                layer.angle[static_cast<std::size_t>(q)]));
        for (int b = layer.cz_parity; b < spec.length - 1; b += 2) {
            rho.apply_2q(b, b + 1, cz);
            if (noise.enabled()) {
                rho.depolarize(b, noise.p);
                rho.depolarize(b + 1, noise.p);
            }
        }
    }
}

double run_typicality(const DisorderInstance& inst, const ScramblerSpec& scr, const std::vector<int>& bits,
                      int qubit, int t) {
    inst.validate();
    check_bits(inst, bits);
    if (scr.length != inst.length) throw std::invalid_argument("run_typicality: scrambler length mismatch");
    if (qubit < 0 || qubit >= inst.length) throw std::out_of_range("run_typicality: qubit out of range");
    if (inst.length + 1 > kMaxPureQubits) throw std::length_error("run_typicality: no room for the ancilla");
    const int L = inst.length;
    const int anc = L;
    std::vector<int> all_bits = bits;
    all_bits.push_back(0);
    StateVector s = StateVector::bitstring(all_bits);
    s.apply_1q(anc, hadamard());
    apply_scrambler(s, scr);
    const GateMatrix cz = cz_gate();
    s.apply_2q(anc, qubit, cz);
    FloquetEngine eng(inst, L + 1);
    for (int k = 0; k < t; ++k) eng.cycle(s);
    s.apply_2q(anc, qubit, cz);
    return s.expect_x(anc);
}

double run_typicality_noisy(const DisorderInstance& inst, const ScramblerSpec& scr,
                            const std::vector<int>& bits, int qubit, int t, const NoiseModel& noise) {
    inst.validate();
    check_bits(inst, bits);
    noise.validate();
    if (scr.length != inst.length) throw std::invalid_argument("run_typicality_noisy: scrambler length mismatch");
    if (qubit < 0 || qubit >= inst.length) throw std::out_of_range("run_typicality_noisy: qubit out of range");
    const int L = inst.length;
    const int anc = L;
    if (L + 1 > kMaxMixedQubits) throw std::length_error("run_typicality_noisy: validation-scale only");
    std::vector<int> all_bits = bits;
    all_bits.push_back(0);
    DensityMatrix rho = DensityMatrix::from_state(StateVector::bitstring(all_bits));
    rho.apply_1q(anc, hadamard());
    apply_scrambler(rho, scr, noise);  // noise on system CZs; ancilla stays clean
    const GateMatrix cz = cz_gate();
    rho.apply_2q(anc, qubit, cz);
    // the drive acts on the system qubits only
    for (int k = 0; k < t; ++k) {
        // embed: rebuild a cycle on the first L qubits of the L+1 register
        if (noise.placement == NoiseModel::Placement::symmetric_per_cycle) {
            depolarize_all(rho, L, noise.p / 2.0);
        }
        const GateMatrix rx = x_rotation(kPi * inst.g);
        for (int q = 0; q < L; ++q) rho.apply_1q(q, rx);
        for (int b : bond_sequence(L)) {
            rho.apply_zz(b, b + 1, inst.phi[static_cast<std::size_t>(b)]);
            if (noise.placement == NoiseModel::Placement::after_two_qubit && noise.enabled()) {
                rho.depolarize(b, noise.p);
                rho.depolarize(b + 1, noise.p);
            }
        }
        for (int q = 0; q < L; ++q) rho.apply_1q(q, z_rotation(inst.h[static_cast<std::size_t>(q)]));
        if (noise.placement == NoiseModel::Placement::symmetric_per_cycle) {
            depolarize_all(rho, L, noise.p / 2.0);
        }
    }
    rho.apply_2q(anc, qubit, cz);
    // <X_a>
    const std::uint64_t m = std::uint64_t{1} << (rho.num_qubits() - 1 - anc);
    double s = 0.0;
    const std::uint64_t d = rho.dim();
    for (std::uint64_t r = 0; r < d; ++r) {
        const std::uint64_t rr = r ^ m;
        s += rho.entry(rr, r).real();
    }
    return s;
}

SpreadStats typicality_spread(const DisorderInstance& inst, int depth, int qubit, int t, int n_bitstrings,
                              std::uint64_t seed) {
    if (n_bitstrings < 2) throw std::invalid_argument("typicality_spread: need at least two bitstrings");
    SpreadStats st;
    st.n = n_bitstrings;
    st.samples.reserve(static_cast<std::size_t>(n_bitstrings));
    for (int j = 0; j < n_bitstrings; ++j) {
        Rng bit_rng = Rng::substream(seed, 2 * static_cast<std::uint64_t>(j));
        const auto bits = random_bits(inst.length, bit_rng);
        const auto scr = build_scrambler(inst.length, depth, splitmix64(seed ^ (2 * static_cast<std::uint64_t>(j) + 1)));
        st.samples.push_back(run_typicality(inst, scr, bits, qubit, t));
    }
    double mean = 0.0;
    for (double v : st.samples) mean += v;
    mean /= st.n;
    double var = 0.0;
    for (double v : st.samples) var += (v - mean) * (v - mean);
    var /= st.n;
    st.mean = mean;
    st.sigma = std::sqrt(var);
    if (std::abs(mean) < 1e-9) {
        st.flagged = true;
        st.ratio = 0.0;
    } else {
        st.ratio = st.sigma / std::abs(mean);
    }
    return st;
}

std::vector<double> ZetaField::window_mean(int t_lo, int t_hi) const {
    if (t_lo < 0 || t_hi >= static_cast<int>(zeta_r.size()) || t_lo > t_hi)
        throw std::invalid_argument("ZetaField::window_mean: bad window");
    const std::size_t L = zeta_r.front().size();
    std::vector<double> mean(L, 0.0);
    for (int t = t_lo; t <= t_hi; ++t)
        for (std::size_t q = 0; q < L; ++q) mean[q] += zeta_r[static_cast<std::size_t>(t)][q];
    for (auto& v : mean) v /= static_cast<double>(t_hi - t_lo + 1);
    return mean;
}

ZetaField run_perturbation(const DisorderInstance& inst, const std::vector<int>& bits, int flip_at,
                           int t_max) {
    inst.validate();
    check_bits(inst, bits);
    if (flip_at < 0 || flip_at >= inst.length) throw std::out_of_range("run_perturbation: flip_at out of range");
    if (t_max < 0 || t_max > kMaxCycles) throw std::invalid_argument("run_perturbation: t_max out of range");
    std::vector<int> flipped = bits;
    flipped[static_cast<std::size_t>(flip_at)] ^= 1;

    ZetaField field;
    field.flip_at = flip_at;
    field.zeta1.reserve(static_cast<std::size_t>(t_max) + 1);
    field.zeta2.reserve(static_cast<std::size_t>(t_max) + 1);
    field.zeta_r.reserve(static_cast<std::size_t>(t_max) + 1);

    StateVector s1 = StateVector::bitstring(bits);
    StateVector s2 = StateVector::bitstring(flipped);
    FloquetEngine eng(inst);
    for (int t = 0; t <= t_max; ++t) {
        if (t > 0) {
            eng.cycle(s1);
            eng.cycle(s2);
        }
        auto z1 = s1.expect_z_all();
        auto z2 = s2.expect_z_all();
        std::vector<double> zr(z1.size());
        for (std::size_t q = 0; q < z1.size(); ++q) {
            const double denom = std::abs(z1[q]) + std::abs(z2[q]);
            zr[q] = denom < 1e-12 ? 0.0 : std::abs(z1[q] - z2[q]) / denom;
        }
        field.zeta1.push_back(std::move(z1));
        field.zeta2.push_back(std::move(z2));
        field.zeta_r.push_back(std::move(zr));
    }
    return field;
}

double interior_pair_chi(const StateVector& s) {
    const int L = s.num_qubits();
    if (L < 4) throw std::domain_error("interior_pair_chi: need at least four qubits");
    const int m = L - 2;
    std::vector<double> corr(static_cast<std::size_t>(m * m), 0.0);
    const auto amps = s.amps();
    std::vector<double> zsign(static_cast<std::size_t>(m));
    for (std::uint64_t k = 0; k < amps.size(); ++k) {
        const double p = std::norm(amps[k]);
        if (p == 0.0) continue;
        for (int i = 0; i < m; ++i)
            zsign[static_cast<std::size_t>(i)] = ((k >> (L - 2 - i)) & 1) ? -1.0 : 1.0;
        for (int i = 0; i < m; ++i) {
            const double pi_ = p * zsign[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < m; ++j)
                corr[static_cast<std::size_t>(i * m + j)] += pi_ * zsign[static_cast<std::size_t>(j)];
        }
    }
    double chi = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double c = corr[static_cast<std::size_t>(i * m + j)];
            chi += 2.0 * c * c;  // ordered pairs
        }
    return chi / static_cast<double>(L - 2);
}

double interior_pair_chi(const DensityMatrix& rho) {
    const int L = rho.num_qubits();
    if (L < 4) throw std::domain_error("interior_pair_chi: need at least four qubits");
    const int m = L - 2;
    std::vector<double> corr(static_cast<std::size_t>(m * m), 0.0);
    std::vector<double> zsign(static_cast<std::size_t>(m));
    const std::uint64_t d = rho.dim();
    for (std::uint64_t k = 0; k < d; ++k) {
        const double p = rho.entry(k, k).real();
        if (p == 0.0) continue;
        for (int i = 0; i < m; ++i)
            zsign[static_cast<std::size_t>(i)] = ((k >> (L - 2 - i)) & 1) ? -1.0 : 1.0;
        for (int i = 0; i < m; ++i) {
            const double pi_ = p * zsign[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < m; ++j)
                corr[static_cast<std::size_t>(i * m + j)] += pi_ * zsign[static_cast<std::size_t>(j)];
        }
    }
    double chi = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double c = corr[static_cast<std::size_t>(i * m + j)];
            chi += 2.0 * c * c;
        }
    return chi / static_cast<double>(L - 2);
}

SpinGlassResult spin_glass_chi(const DisorderInstance& inst, const std::vector<int>& bits, int t_lo,
                               int t_hi, const NoiseModel& noise, bool even_times_only) {
    inst.validate();
    check_bits(inst, bits);
    noise.validate();
    if (inst.length < 4) throw std::domain_error("spin_glass_chi: need at least four qubits");
    if (t_lo < 0 || t_hi < t_lo || t_hi > kMaxCycles) throw std::invalid_argument("spin_glass_chi: bad window");

    SpinGlassResult res;
    res.length = inst.length;
    res.g = inst.g;
    res.t_lo = t_lo;
    res.t_hi = t_hi;

    double sum = 0.0;
    int count = 0;
    auto want = [&](int t) { return t >= t_lo && (!even_times_only || t % 2 == 0); };

    if (!noise.enabled()) {
        StateVector s = StateVector::bitstring(bits);
        FloquetEngine eng(inst);
        for (int t = 0; t <= t_hi; ++t) {
            if (t > 0) eng.cycle(s);
            if (want(t)) {
                sum += interior_pair_chi(s);
                ++count;
            }
        }
    } else {
        DensityMatrix rho = DensityMatrix::from_state(StateVector::bitstring(bits));
        for (int t = 0; t <= t_hi; ++t) {
            if (t > 0) noisy_cycle(rho, inst, noise);
            if (want(t)) {
                sum += interior_pair_chi(rho);
                ++count;
            }
        }
    }
    if (count == 0) throw std::invalid_argument("spin_glass_chi: window selects no cycles");
    res.chi = sum / count;
    return res;
}

std::vector<int> random_bits(int length, Rng& rng) {
    std::vector<int> bits(static_cast<std::size_t>(length));
    for (auto& b : bits) b = rng.uniform() < 0.5 ? 0 : 1;
    return bits;
}

}  // namespace dtc
