#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dtc {

// SplitMix64 output function, used to derive well-separated substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Deterministic random stream. The engine is std::mt19937_64 (bit-exact by
/// the C++ standard on every platform); variates are produced without the
/// standard-library distributions, which carry no such guarantee.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Substream derived from (master, index); distinct indices give
    // statistically independent streams regardless of draw order.
    static Rng substream(std::uint64_t master, std::uint64_t index) {
        return Rng(splitmix64(master ^ splitmix64(index + 0x51ed2701a9e3c4d5ULL)));
    }

    std::uint64_t bits() { return eng_(); }

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

    // Standard normal via Box-Muller.
    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace dtc
