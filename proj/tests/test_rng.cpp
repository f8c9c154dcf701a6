#include <doctest.h>

#include <cmath>

#include "dtclab/rng.hpp"

using namespace dtc;

TEST_SUITE_BEGIN("rng");

TEST_CASE("fixed seed reproduces the stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.bits() == b.bits());
}

TEST_CASE("substreams are independent of derivation order") {
    Rng a = Rng::substream(7, 3);
    Rng unused = Rng::substream(7, 1);
    (void)unused.bits();
    Rng b = Rng::substream(7, 3);
    for (int i = 0; i < 10; ++i) CHECK(a.bits() == b.bits());
}

TEST_CASE("uniform stays in range and fills it") {
    Rng rng(1);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 20000; ++i) {
        const double v = rng.uniform();
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
}

TEST_CASE("gauss moments") {
    Rng rng(5);
    const int n = 200000;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = rng.gauss();
        s1 += v;
        s2 += v * v;
    }
    CHECK(std::abs(s1 / n) < 0.01);
    CHECK(std::abs(s2 / n - 1.0) < 0.02);
}

TEST_SUITE_END();
