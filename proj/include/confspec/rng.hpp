#pragma once

// Seeded deterministic random helpers. Distributions are derived from raw
// mt19937_64 output only, so identical seeds give identical streams on every
// platform (std::normal_distribution et al. are implementation-defined).

#include <cmath>
#include <cstdint>
#include <random>

namespace confspec {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return (eng_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    /// Standard normal via Box-Muller.
    double gaussian() {
        double u1 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    /// Uniform integer in [0, bound).
    std::uint64_t index(std::uint64_t bound) { return eng_() % bound; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace confspec
