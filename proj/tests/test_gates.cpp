#include <doctest.h>

#include <cmath>

#include "dtclab/gates.hpp"
#include "dtclab/rng.hpp"

using namespace dtc;

TEST_SUITE_BEGIN("gates");

TEST_CASE("standard gates are unitary") {
    for (const auto& g : {pauli_x(), pauli_y(), pauli_z(), hadamard(), x_rotation(0.3), y_rotation(-1.1),
                          z_rotation(2.7), equatorial_rotation(0.9, 1.3)})
        CHECK(g.unitarity_error() < 1e-14);
    CHECK(cz_gate().unitarity_error() < 1e-14);
}

TEST_CASE("pi rotation squares to a global sign") {
    const GateMatrix r = pi_rotation(0.7);
    // r^2 = -I
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < 2; ++k) s += r.at(i, k) * r.at(k, j);
            CHECK(std::abs(s - (i == j ? cplx(-1.0, 0.0) : cplx(0.0, 0.0))) < 1e-14);
        }
}

TEST_CASE("depolarizing channel is complete across the p range") {
    for (double p : {0.0, 0.005, 0.3, 0.75}) CHECK(depolarizing_channel(p).completeness_error() < 1e-12);
    CHECK_THROWS_AS(depolarizing_channel(-0.1), std::domain_error);
    CHECK_THROWS_AS(depolarizing_channel(0.76), std::domain_error);
}

TEST_CASE("incomplete Kraus set is detected") {
    KrausChannel ch{{pauli_x()}};
    auto& op = ch.operators.front();
    for (auto& e : op.m) e *= 0.5;
    CHECK(ch.completeness_error() > 0.1);
}

TEST_CASE("kron matches by-hand entries") {
    const GateMatrix zz = kron(pauli_z(), pauli_z());
    CHECK(zz.at(0, 0) == cplx(1.0, 0.0));
    CHECK(zz.at(1, 1) == cplx(-1.0, 0.0));
    CHECK(zz.at(2, 2) == cplx(-1.0, 0.0));
    CHECK(zz.at(3, 3) == cplx(1.0, 0.0));
}

TEST_SUITE_END();
