#pragma once

#include <cstdint>
#include <random>

namespace subtile {

// Seeded generator with explicit range mapping. mt19937_64 output is fully
// specified by the standard; avoiding std::uniform_*_distribution keeps
// experiment streams byte-reproducible across standard libraries.
class Rng {
  public:
    explicit Rng(uint64_t seed) : eng_(seed) {}

    uint64_t next() { return eng_(); }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }
    long long uniform_int(long long n) { return static_cast<long long>(uniform() * static_cast<double>(n)); }

  private:
    std::mt19937_64 eng_;
};

inline constexpr uint64_t kDefaultSeed = 1729;

}  // namespace subtile
