#include <doctest.h>

#include <cmath>

#include "dtclab/state_vector.hpp"
#include "test_helpers.hpp"

using namespace dtc;

TEST_SUITE_BEGIN("state_vector");

TEST_CASE("bitstring indexing: qubit 0 is the most significant bit") {
    const auto s0 = StateVector::bitstring({0});
    CHECK(s0.amp(0) == cplx(1.0, 0.0));
    CHECK(s0.amp(1) == cplx(0.0, 0.0));

    const auto s = StateVector::bitstring({1, 0});
    CHECK(s.amp(2) == cplx(1.0, 0.0));
    CHECK(std::abs(s.amp(0)) + std::abs(s.amp(1)) + std::abs(s.amp(3)) == 0.0);
}

TEST_CASE("interleaved bitstring lands on the expected index") {
    std::vector<int> neel;
    for (int q = 0; q < 20; ++q) neel.push_back(q % 2);
    const auto s = StateVector::bitstring(neel);
    CHECK(std::abs(s.amp(0b01010101010101010101) - 1.0) < 1e-15);
}

TEST_CASE("bitstring validation") {
    CHECK_THROWS_AS(StateVector::bitstring({}), std::length_error);
    CHECK_THROWS_AS(StateVector::bitstring(std::vector<int>(23, 0)), std::length_error);
    CHECK_THROWS_AS(StateVector::bitstring({0, 2}), std::invalid_argument);
}

TEST_CASE("X flips the ground state") {
    auto s = StateVector::bitstring({0});
    s.apply_1q(0, pauli_x());
    CHECK(std::abs(s.amp(1) - 1.0) < 1e-15);
}

TEST_CASE("full pi x-rotation gives -i|1>") {
    auto s = StateVector::bitstring({0});
    s.apply_1q(0, x_rotation(kPi));
    CHECK(std::abs(s.amp(1) - cplx(0.0, -1.0)) < 1e-14);
    CHECK(std::abs(s.expect_z(0) + 1.0) < 1e-14);
}

TEST_CASE("hadamard twice restores a random state") {
    Rng rng(3);
    auto s = StateVector::haar_random(3, rng);
    const auto before = std::vector<cplx>(s.amps().begin(), s.amps().end());
    s.apply_1q(1, hadamard());
    s.apply_1q(1, hadamard());
    for (std::size_t k = 0; k < before.size(); ++k) CHECK(std::abs(s.amp(k) - before[k]) < 1e-12);
}

TEST_CASE("one-qubit gate errors") {
    auto s = StateVector::bitstring({0, 0});
    CHECK_THROWS_AS(s.apply_1q(2, pauli_x()), std::out_of_range);
    GateMatrix bad = pauli_x();
    bad.at(0, 1) = 0.5;
    CHECK_THROWS_AS(s.apply_1q(0, bad), std::invalid_argument);
}

TEST_CASE("CZ phases |11> only") {
    auto s = StateVector::bitstring({1, 1});
    s.apply_2q(0, 1, cz_gate());
    CHECK(std::abs(s.amp(3) + 1.0) < 1e-15);
}

TEST_CASE("ZZ(pi) puts e^{i pi/4} on |01>") {
    auto s = StateVector::bitstring({0, 1});
    s.apply_2q(0, 1, zz_gate_matrix(kPi));
    CHECK(std::abs(s.amp(1) - std::polar(1.0, kPi / 4.0)) < 1e-14);
}

TEST_CASE("factorized two-qubit gate equals two one-qubit gates") {
    Rng rng(11);
    for (int rep = 0; rep < 20; ++rep) {
        auto a = equatorial_rotation(rng.uniform(0, 2 * kPi), rng.uniform(0, 2 * kPi));
        auto b = equatorial_rotation(rng.uniform(0, 2 * kPi), rng.uniform(0, 2 * kPi));
        auto s1 = StateVector::haar_random(4, rng);
        auto s2 = s1;
        const int q1 = rng.uniform_int(4);
        int q2 = rng.uniform_int(4);
        while (q2 == q1) q2 = rng.uniform_int(4);
        s1.apply_2q(q1, q2, kron(a, b));
        s2.apply_1q(q1, a);
        s2.apply_1q(q2, b);
        for (std::uint64_t k = 0; k < s1.dim(); ++k) CHECK(std::abs(s1.amp(k) - s2.amp(k)) < 1e-12);
    }
}

TEST_CASE("two-qubit gate against the dense embedding oracle") {
    Rng rng(12);
    const GateMatrix f = zz_gate_matrix(-1.3);
    auto s = StateVector::haar_random(4, rng);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dim()));
    for (std::uint64_t k = 0; k < s.dim(); ++k) v(static_cast<Eigen::Index>(k)) = s.amp(k);
    const auto expected = oracle::embed2(4, 1, 3, oracle::mat4(f)) * v;
    s.apply_2q(1, 3, f);
    for (std::uint64_t k = 0; k < s.dim(); ++k)
        CHECK(std::abs(s.amp(k) - expected(static_cast<Eigen::Index>(k))) < 1e-12);
}

TEST_CASE("expectations on product and superposition states") {
    CHECK(StateVector::bitstring({0}).expect_z(0) == doctest::Approx(1.0));
    auto plus = StateVector::bitstring({0});
    plus.apply_1q(0, hadamard());
    CHECK(plus.expect_z(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(plus.expect_x(0) == doctest::Approx(1.0));

    // sqrt(0.3)|0> + sqrt(0.7)|1>
    auto s = StateVector::bitstring({0});
    s.amps_mut()[0] = std::sqrt(0.3);
    s.amps_mut()[1] = std::sqrt(0.7);
    CHECK(s.expect_z(0) == doctest::Approx(-0.4));

    CHECK(StateVector::bitstring({1}).expect_x(0) == doctest::Approx(0.0));

    // (|0> + e^{i pi/3}|1>)/sqrt(2)
    auto ph = StateVector::bitstring({0});
    ph.amps_mut()[0] = 1.0 / std::sqrt(2.0);
    ph.amps_mut()[1] = std::polar(1.0 / std::sqrt(2.0), kPi / 3.0);
    CHECK(ph.expect_x(0) == doctest::Approx(0.5));
}

TEST_CASE("expect_zz on pairs and GHZ") {
    CHECK(StateVector::bitstring({0, 0}).expect_zz(0, 1) == doctest::Approx(1.0));
    CHECK(StateVector::bitstring({0, 1}).expect_zz(0, 1) == doctest::Approx(-1.0));
    auto ghz = StateVector::bitstring({0, 0});
    ghz.amps_mut()[0] = 1.0 / std::sqrt(2.0);
    ghz.amps_mut()[3] = 1.0 / std::sqrt(2.0);
    CHECK(ghz.expect_zz(0, 1) == doctest::Approx(1.0));
    CHECK_THROWS_AS(ghz.expect_zz(1, 1), std::invalid_argument);
}

TEST_CASE("unitarity holds over long random sequences") {
    Rng rng(77);
    auto s = StateVector::haar_random(8, rng);
    for (int i = 0; i < 10000; ++i) {
        const int q = rng.uniform_int(8);
        s.apply_1q(q, equatorial_rotation(rng.uniform(0, 2 * kPi), rng.uniform(0, 2 * kPi)));
        if (i % 3 == 0) {
            int q2 = rng.uniform_int(8);
            while (q2 == q) q2 = rng.uniform_int(8);
            s.apply_2q(q, q2, zz_gate_matrix(rng.uniform(-2 * kPi, 0)));
        }
    }
    CHECK(std::abs(s.norm_sq() - 1.0) < 1e-9);
}

TEST_CASE("haar sampling: determinism, mean, and variance") {
    {
        Rng a(123), b(123);
        const auto s1 = StateVector::haar_random(4, a);
        const auto s2 = StateVector::haar_random(4, b);
        for (std::uint64_t k = 0; k < s1.dim(); ++k) CHECK(s1.amp(k) == s2.amp(k));
    }
    {
        // L=1: mean <Z> ~ 0 within 5 sigma of the typicality variance
        Rng rng(9);
        const int n = 100000;
        double mean = 0.0;
        for (int i = 0; i < n; ++i) mean += StateVector::haar_random(1, rng).expect_z(0);
        mean /= n;
        const double sigma = std::sqrt(1.0 / 3.0 / n);  // Var = 1/(2^1+1)
        CHECK(std::abs(mean) < 5.0 * sigma);
    }
    {
        // L=10: Var(<Z_i>) ~ 1/(2^L + 1) within 20%
        Rng rng(10);
        const int n = 10000;
        double s1 = 0.0, s2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double z = StateVector::haar_random(10, rng).expect_z(3);
            s1 += z;
            s2 += z * z;
        }
        const double var = s2 / n - (s1 / n) * (s1 / n);
        CHECK(var == doctest::Approx(1.0 / 1025.0).epsilon(0.2));
    }
}

TEST_SUITE_END();
