#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "dtclab/density_matrix.hpp"
#include "dtclab/rng.hpp"
#include "test_helpers.hpp"

using namespace dtc;

namespace {

oracle::CMat to_mat(const DensityMatrix& rho) {
    const auto d = static_cast<Eigen::Index>(rho.dim());
    oracle::CMat m(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c)
            m(r, c) = rho.entry(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(c));
    return m;
}

double min_eigenvalue(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<oracle::CMat> es(to_mat(rho));
    return es.eigenvalues().minCoeff();
}

}  // namespace

TEST_SUITE_BEGIN("density_matrix");

TEST_CASE("projector from a state") {
    const auto rho0 = DensityMatrix::from_state(StateVector::bitstring({0}));
    CHECK(std::abs(rho0.entry(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(rho0.entry(1, 1)) < 1e-15);

    auto plus = StateVector::bitstring({0});
    plus.apply_1q(0, hadamard());
    const auto rhop = DensityMatrix::from_state(plus);
    for (std::uint64_t r = 0; r < 2; ++r)
        for (std::uint64_t c = 0; c < 2; ++c) CHECK(std::abs(rhop.entry(r, c) - 0.5) < 1e-14);

    Rng rng(4);
    const auto rho = DensityMatrix::from_state(StateVector::haar_random(5, rng));
    CHECK(std::abs(rho.trace_real() - 1.0) < 1e-10);
    CHECK(std::abs(rho.purity() - 1.0) < 1e-10);
}

TEST_CASE("identity channel leaves the state alone") {
    Rng rng(5);
    auto rho = DensityMatrix::from_state(StateVector::haar_random(3, rng));
    const auto before = to_mat(rho);
    rho.apply_channel_1q(1, identity_channel());
    CHECK((to_mat(rho) - before).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("depolarizing basics") {
    // p = 0: identity
    Rng rng(6);
    auto rho = DensityMatrix::from_state(StateVector::haar_random(2, rng));
    const auto before = to_mat(rho);
    rho.depolarize(0, 0.0);
    CHECK((to_mat(rho) - before).cwiseAbs().maxCoeff() == 0.0);

    // maximally mixed is a fixed point
    auto mixed = DensityMatrix::maximally_mixed(1);
    mixed.depolarize(0, 0.3);
    CHECK(std::abs(mixed.entry(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(mixed.entry(0, 1)) < 1e-15);

    // Pauli-transfer coefficient: <Z> -> (1 - 4p/3) <Z>
    auto zket = DensityMatrix::from_state(StateVector::bitstring({0}));
    zket.depolarize(0, 0.005);
    CHECK(zket.expect_z(0) == doctest::Approx(1.0 - 4.0 * 0.005 / 3.0).epsilon(1e-12));

    // p = 3/4 is full erasure
    auto erased = DensityMatrix::from_state(StateVector::bitstring({0}));
    erased.depolarize(0, 0.75);
    CHECK(std::abs(erased.entry(0, 0) - 0.5) < 1e-14);
    CHECK(std::abs(erased.entry(1, 1) - 0.5) < 1e-14);
    CHECK(std::abs(erased.entry(0, 1)) < 1e-14);

    CHECK_THROWS_AS(zket.depolarize(0, -0.01), std::domain_error);
    CHECK_THROWS_AS(zket.depolarize(0, 0.76), std::domain_error);
}

TEST_CASE("two depolarizing passes compose like the matrix oracle") {
    Rng rng(7);
    const double p = 0.1;
    auto rho = DensityMatrix::from_state(StateVector::haar_random(3, rng));
    const auto m0 = to_mat(rho);

    // oracle: E_p(rho) = (1 - 4p/3) rho + (4p/3) (I/2 (x) Tr_q rho), applied
    // twice by direct dense algebra on qubit 1
    auto erase_q1 = [&](const oracle::CMat& m) {
        oracle::CMat out = oracle::CMat::Zero(8, 8);
        for (Eigen::Index r = 0; r < 8; ++r)
            for (Eigen::Index c = 0; c < 8; ++c) {
                const auto rb = (r >> 1) & 1, cb = (c >> 1) & 1;
                if (rb != cb) continue;
                const Eigen::Index r0 = r & ~Eigen::Index{2}, c0 = c & ~Eigen::Index{2};
                out(r, c) = 0.5 * (m(r0, c0) + m(r0 | 2, c0 | 2));
            }
        return out;
    };
    auto dep = [&](const oracle::CMat& m) { return (1.0 - 4.0 * p / 3.0) * m + (4.0 * p / 3.0) * erase_q1(m); };
    const auto expected = dep(dep(m0));

    rho.depolarize(1, p);
    rho.depolarize(1, p);
    CHECK((to_mat(rho) - expected).cwiseAbs().maxCoeff() < 1e-13);

    // combined damping of the traceless part is (1 - 4p/3)^2
    const double damp = (1.0 - 4.0 * p / 3.0) * (1.0 - 4.0 * p / 3.0);
    const auto traceless_in = m0 - erase_q1(m0);
    const auto traceless_out = to_mat(rho) - erase_q1(to_mat(rho));
    CHECK((traceless_out - damp * traceless_in).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("fused depolarize equals the Kraus form") {
    Rng rng(8);
    for (double p : {0.005, 0.2, 0.75}) {
        auto a = DensityMatrix::from_state(StateVector::haar_random(4, rng));
        auto b = a;
        a.depolarize(2, p);
        b.apply_channel_1q(2, depolarizing_channel(p));
        CHECK((to_mat(a) - to_mat(b)).cwiseAbs().maxCoeff() < 1e-13);
    }
}

TEST_CASE("incomplete Kraus set is rejected") {
    auto rho = DensityMatrix::from_state(StateVector::bitstring({0}));
    KrausChannel bad{{pauli_x()}};
    for (auto& e : bad.operators.front().m) e *= 0.7;
    CHECK_THROWS_AS(rho.apply_channel_1q(0, bad), std::invalid_argument);
}

TEST_CASE("gate application tracks the pure-state engine") {
    Rng rng(9);
    auto s = StateVector::haar_random(4, rng);
    auto rho = DensityMatrix::from_state(s);
    const auto g1 = equatorial_rotation(1.1, 0.7);
    const auto g2 = zz_gate_matrix(-2.2);
    s.apply_1q(2, g1);
    rho.apply_1q(2, g1);
    s.apply_2q(1, 3, g2);
    rho.apply_2q(1, 3, g2);
    const auto expected = DensityMatrix::from_state(s);
    CHECK((to_mat(rho) - to_mat(expected)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("apply_zz matches the generic two-qubit path") {
    Rng rng(10);
    auto a = DensityMatrix::from_state(StateVector::haar_random(4, rng));
    auto b = a;
    a.apply_zz(0, 2, -1.7);
    b.apply_2q(0, 2, zz_gate_matrix(-1.7));
    CHECK((to_mat(a) - to_mat(b)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("trace, hermiticity, and positivity through a noisy sequence") {
    Rng rng(11);
    auto rho = DensityMatrix::from_state(StateVector::haar_random(4, rng));
    for (int i = 0; i < 50; ++i) {
        rho.apply_1q(rng.uniform_int(4), equatorial_rotation(rng.uniform(0, 2 * kPi), rng.uniform(0, 2 * kPi)));
        rho.apply_zz(rng.uniform_int(3), 3, rng.uniform(-3.0, 0.0));
        rho.depolarize(rng.uniform_int(4), 0.02);
    }
    CHECK(rho.trace_error() < 1e-10);
    CHECK(rho.hermiticity_error() < 1e-10);
    CHECK(min_eigenvalue(rho) > -1e-8);
}

TEST_CASE("expectations agree with the state-vector engine for pure states") {
    Rng rng(12);
    for (int rep = 0; rep < 5; ++rep) {
        auto s = StateVector::haar_random(6, rng);
        const auto rho = DensityMatrix::from_state(s);
        for (int q = 0; q < 6; ++q) CHECK(std::abs(rho.expect_z(q) - s.expect_z(q)) < 1e-10);
        CHECK(std::abs(rho.expect_zz(1, 4) - s.expect_zz(1, 4)) < 1e-10);
    }
}

TEST_CASE("size guard") { CHECK_THROWS_AS(DensityMatrix(13), std::length_error); }

TEST_SUITE_END();
