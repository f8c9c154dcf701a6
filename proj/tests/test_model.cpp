#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dtclab/dense.hpp"
#include "dtclab/model.hpp"
#include "test_helpers.hpp"

using namespace dtc;

TEST_SUITE_BEGIN("model");

TEST_CASE("disorder sampling: ranges, determinism, mean") {
    double sum_phi = 0.0;
    int count = 0;
    for (int i = 0; i < 10000; ++i) {
        const auto inst = sample_disorder(20, 0.9, static_cast<std::uint64_t>(i));
        for (double p : inst.phi) {
            CHECK(p >= -1.5 * kPi);
            CHECK(p <= -0.5 * kPi);
            sum_phi += p;
            ++count;
        }
        for (double h : inst.h) {
            CHECK(h >= -kPi);
            CHECK(h <= kPi);
        }
    }
    // uniform mean -pi, sd = pi/sqrt(12); 3 sigma of the sample mean
    const double mean = sum_phi / count;
    const double sigma_mean = (kPi / std::sqrt(12.0)) / std::sqrt(static_cast<double>(count));
    CHECK(std::abs(mean + kPi) < 3.0 * sigma_mean);

    const auto a = sample_disorder(12, 0.8, 99);
    const auto b = sample_disorder(12, 0.8, 99);
    CHECK(a.phi == b.phi);
    CHECK(a.h == b.h);

    CHECK_THROWS_AS(sample_disorder(1, 0.9, 0), std::length_error);
    CHECK_THROWS_AS(sample_disorder(23, 0.9, 0), std::length_error);
    CHECK_THROWS_AS(sample_disorder(8, 1.2, 0), std::domain_error);
}

TEST_CASE("uniform instances share the field stream") {
    const auto u = uniform_instance(10, 0.94, -0.4, 7);
    for (double p : u.phi) CHECK(p == -0.4);
    const auto u0 = uniform_instance(10, 0.94, 0.0, 7);
    for (double p : u0.phi) CHECK(p == 0.0);
    const auto d = sample_disorder(10, 0.94, 7);
    CHECK(u.h == d.h);
}

TEST_CASE("fsim matrix special points") {
    const auto id = fsim_matrix({});
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            CHECK(std::abs(id.at(r, c) - (r == c ? cplx(1.0, 0.0) : cplx(0.0, 0.0))) < 1e-15);

    // iSWAP-like point: off-diagonal -i entries
    const auto iswap = fsim_matrix({kPi / 2.0, 0, 0, 0, 0});
    CHECK(std::abs(iswap.at(1, 2) - cplx(0.0, -1.0)) < 1e-15);
    CHECK(std::abs(iswap.at(2, 1) - cplx(0.0, -1.0)) < 1e-15);
    CHECK(std::abs(iswap.at(1, 1)) < 1e-15);
    CHECK(std::abs(iswap.at(2, 2)) < 1e-15);
}

TEST_CASE("fsim at the conditional-phase point is CPHASE with Z(phi/2) on each leg") {
    const double phi = -1.1;
    FsimParams p;
    p.delta_plus = phi / 2.0;
    p.phi = phi;  // phi = 2 delta_plus
    const auto f = oracle::mat4(fsim_matrix(p));

    oracle::CMat cphase = oracle::CMat::Identity(4, 4);
    cphase(3, 3) = std::polar(1.0, -phi);
    oracle::CMat zhalf(2, 2);
    zhalf.setZero();
    zhalf(0, 0) = 1.0;
    zhalf(1, 1) = std::polar(1.0, phi / 2.0);
    const oracle::CMat expected = cphase * oracle::kron(zhalf, zhalf);

    const cplx scale = f(1, 1) / expected(1, 1);
    CHECK(std::abs(std::abs(scale) - 1.0) < 1e-12);
    CHECK((f - scale * expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("fsim is unitary across random parameter draws") {
    Rng rng(21);
    for (int i = 0; i < 10000; ++i) {
        FsimParams p;
        p.theta = rng.uniform(0, 2 * kPi);
        p.delta_plus = rng.uniform(-kPi, kPi);
        p.delta_minus = rng.uniform(-kPi, kPi);
        p.delta_minus_off = rng.uniform(-kPi, kPi);
        p.phi = rng.uniform(-2 * kPi, 2 * kPi);
        CHECK(fsim_matrix(p).unitarity_error() < 1e-12);
    }
}

TEST_CASE("zz gate: identity, values, inverse") {
    const auto id = zz_gate_matrix(0.0);
    for (int r = 0; r < 4; ++r) CHECK(std::abs(id.at(r, r) - 1.0) < 1e-15);

    const auto zpi = zz_gate_matrix(kPi);
    CHECK(std::abs(zpi.at(0, 0) - std::polar(1.0, -kPi / 4)) < 1e-15);
    CHECK(std::abs(zpi.at(1, 1) - std::polar(1.0, kPi / 4)) < 1e-15);
    CHECK(std::abs(zpi.at(2, 2) - std::polar(1.0, kPi / 4)) < 1e-15);
    CHECK(std::abs(zpi.at(3, 3) - std::polar(1.0, -kPi / 4)) < 1e-15);

    const auto a = zz_gate_matrix(1.7), b = zz_gate_matrix(-1.7);
    for (int r = 0; r < 4; ++r) CHECK(std::abs(a.at(r, r) * b.at(r, r) - 1.0) < 1e-15);
}

TEST_CASE("circuit layer counts") {
    const auto inst = sample_disorder(9, 0.9, 5);
    const auto circ = build_circuit(inst);
    CHECK(circ.zz_gates.size() == 8);
    CHECK(circ.z_gates.size() == 9);
    CHECK(circ.bond_order.size() == 8);
}

TEST_CASE("pi pulses flip every qubit exactly") {
    const auto inst = sample_disorder(8, 1.0, 13);
    Rng rng(14);
    std::vector<int> bits;
    for (int q = 0; q < 8; ++q) bits.push_back(rng.uniform() < 0.5 ? 1 : 0);
    StateVector s = StateVector::bitstring(bits);
    FloquetEngine eng(inst);
    std::vector<double> z0 = s.expect_z_all();
    for (int t = 1; t <= 6; ++t) {
        eng.cycle(s);
        const auto z = s.expect_z_all();
        for (int q = 0; q < 8; ++q)
            CHECK(z[static_cast<std::size_t>(q)] ==
                  doctest::Approx((t % 2 ? -1.0 : 1.0) * z0[static_cast<std::size_t>(q)]).epsilon(1e-12));
    }
}

TEST_CASE("decoupled qubits rotate by pi g each cycle") {
    // phi = 0, h = 0: <Z(t)> = cos(pi g t) on every qubit
    const double g = 0.6;
    const auto inst = make_instance(2, g, 0, {0.0}, {0.0, 0.0}, CouplingMode::uniform);
    StateVector s = StateVector::bitstring({0, 0});
    FloquetEngine eng(inst);
    for (int t = 1; t <= 10; ++t) {
        eng.cycle(s);
        for (int q = 0; q < 2; ++q)
            CHECK(s.expect_z(q) == doctest::Approx(std::cos(kPi * g * t)).epsilon(1e-10));
    }
}

TEST_CASE("cycle matches the dense gate-by-gate oracle at L=4") {
    const auto inst = sample_disorder(4, 0.83, 17);
    FloquetEngine eng(inst);
    const CMat engine_u = matrix_of(4, [&](StateVector& s) { eng.cycle(s); });
    const CMat oracle_u = oracle::cycle_matrix(inst);
    CHECK((engine_u - oracle_u).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("explicit circuit path equals the fused engine path") {
    const auto inst = sample_disorder(6, 0.77, 23);
    const auto circ = build_circuit(inst);
    Rng rng(24);
    auto s1 = StateVector::haar_random(6, rng);
    auto s2 = s1;
    for (int q = 0; q < 6; ++q) s1.apply_1q(q, circ.x_gate);
    for (std::size_t i = 0; i < circ.bond_order.size(); ++i)
        s1.apply_2q(circ.bond_order[i], circ.bond_order[i] + 1, circ.zz_gates[i]);
    for (int q = 0; q < 6; ++q) s1.apply_1q(q, circ.z_gates[static_cast<std::size_t>(q)]);
    apply_cycle(s2, inst);
    for (std::uint64_t k = 0; k < s1.dim(); ++k) CHECK(std::abs(s1.amp(k) - s2.amp(k)) < 1e-12);
}

TEST_CASE("permuting the commuting ZZ layer does not change the cycle") {
    const auto inst = sample_disorder(5, 0.85, 31);
    auto apply_with_order = [&](const std::vector<int>& order) {
        return matrix_of(5, [&](StateVector& s) {
            for (int q = 0; q < 5; ++q) s.apply_1q(q, x_rotation(kPi * inst.g));
            for (int b : order) s.apply_2q(b, b + 1, zz_gate_matrix(inst.phi[static_cast<std::size_t>(b)]));
            for (int q = 0; q < 5; ++q) s.apply_1q(q, z_rotation(inst.h[static_cast<std::size_t>(q)]));
        });
    };
    const CMat a = apply_with_order({0, 1, 2, 3});
    const CMat b = apply_with_order({3, 1, 0, 2});
    CHECK((a - b).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("inverse cycle undoes the cycle") {
    const auto inst = sample_disorder(6, 0.91, 41);
    Rng rng(42);
    auto s = StateVector::haar_random(6, rng);
    const auto before = std::vector<cplx>(s.amps().begin(), s.amps().end());
    apply_cycle(s, inst);
    apply_inverse_cycle(s, inst);
    for (std::uint64_t k = 0; k < s.dim(); ++k) CHECK(std::abs(s.amp(k) - before[k]) < 1e-12);

    // t cycles then t inverse cycles: fidelity 1 within 1e-9
    FloquetEngine eng(inst);
    auto s2 = StateVector::haar_random(6, rng);
    StateVector ref = s2;
    for (int t = 0; t < 20; ++t) eng.cycle(s2);
    for (int t = 0; t < 20; ++t) eng.inverse_cycle(s2);
    CHECK(std::abs(std::abs(ref.inner(s2)) - 1.0) < 1e-9);
}

TEST_CASE("x-conjugation on alternating sites realizes the inverse with the same couplings") {
    // U_F^dag = P M P with P = X on alternating sites: the conjugation flips
    // every ZZ angle, so M keeps the original couplings and only the
    // single-qubit layers change.
    const auto inst = sample_disorder(4, 0.88, 47);
    const int L = 4;
    FloquetEngine eng(inst);
    const CMat u = matrix_of(L, [&](StateVector& s) { eng.cycle(s); });
    const CMat u_dag = u.adjoint();

    CMat p = CMat::Identity(16, 16);
    for (int q = 1; q < L; q += 2) p = oracle::embed1(L, q, oracle::pauli('X')) * p;

    std::vector<double> h_mod(static_cast<std::size_t>(L));
    for (int q = 0; q < L; ++q)
        h_mod[static_cast<std::size_t>(q)] = (q % 2 == 0 ? -1.0 : 1.0) * inst.h[static_cast<std::size_t>(q)];
    CMat m = oracle::ux_matrix(L, -kPi * inst.g);
    for (int b = 0; b < L - 1; ++b)
        m = m * oracle::embed2(L, b, b + 1, oracle::mat4(zz_gate_matrix(inst.phi[static_cast<std::size_t>(b)])));
    m = m * oracle::uz_matrix(L, std::vector<double>(static_cast<std::size_t>(L - 1), 0.0), h_mod);

    CHECK(phase_aligned_distance(u_dag, p * m * p) < 1e-10);
}

TEST_CASE("period-2 exactness at g=1") {
    const auto inst = sample_disorder(7, 1.0, 53);
    std::vector<int> bits = {1, 0, 0, 1, 1, 1, 0};
    StateVector s = StateVector::bitstring(bits);
    FloquetEngine eng(inst);
    const auto z0 = s.expect_z_all();
    for (int t = 1; t <= 100; ++t) {
        eng.cycle(s);
        if (t % 2 == 0) {
            const auto z = s.expect_z_all();
            for (int q = 0; q < 7; ++q)
                CHECK(std::abs(z[static_cast<std::size_t>(q)] - z0[static_cast<std::size_t>(q)]) < 1e-12);
        }
    }
}

TEST_CASE("norm is preserved over 100 cycles at L=20") {
    const auto inst = sample_disorder(20, 0.94, 61);
    std::vector<int> bits(20, 0);
    for (int q = 0; q < 20; q += 3) bits[static_cast<std::size_t>(q)] = 1;
    StateVector s = StateVector::bitstring(bits);
    FloquetEngine eng(inst);
    for (int t = 0; t < 100; ++t) eng.cycle(s);
    CHECK(std::abs(s.norm_sq() - 1.0) < 1e-10);
}

TEST_CASE("size mismatch is rejected") {
    const auto inst = sample_disorder(5, 0.9, 71);
    StateVector s(4);
    CHECK_THROWS_AS(apply_cycle(s, inst), std::invalid_argument);
}

TEST_SUITE_END();
