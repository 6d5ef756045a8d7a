#pragma once

#include <cstdint>
#include <cmath>
#include <random>

namespace rlab {

inline constexpr double kPi = 3.14159265358979323846;

// 64-bit finalizer, used to derive independent substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// Deterministic RNG. mt19937_64 is fully specified by the standard; the
// distributions are hand-rolled because std:: distributions are
// implementation-defined and outputs must be byte-reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Independent stream for task `id` under a run seed. Streams for
    // distinct ids never share state, so parallel layout cannot change
    // results.
    static Rng substream(std::uint64_t seed, std::uint64_t id) {
        return Rng(splitmix64(splitmix64(seed ^ 0x6a09e667f3bcc908ull) + id));
    }

    std::uint64_t u64() { return eng_(); }

    double u01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }  // [0,1)

    double uniform(double a, double b) { return a + (b - a) * u01(); }

    double normal() {
        if (has_spare_) { has_spare_ = false; return spare_; }
        double u, v, s;
        do {
            u = 2.0 * u01() - 1.0;
            v = 2.0 * u01() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        has_spare_ = true;
        return u * f;
    }

    double cauchy() { return std::tan(kPi * (u01() - 0.5)); }

    int uniform_int(int n) {  // 0..n-1, unbiased enough for n << 2^53
        return static_cast<int>(u01() * n);
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace rlab
