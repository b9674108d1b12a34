#pragma once
#include <cmath>
#include <cstdint>
#include <random>

namespace axb {

// Seeded generator with hand-rolled mappings.  std::mt19937_64 has a pinned
// algorithm; the <random> distributions do not, so they are avoided to keep
// outputs byte-identical across standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform in [0, 1): top 53 bits of the draw.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Uniform integer in [0, m); m is tiny in all uses, modulo bias is
    // far below any tolerance in play.
    std::uint64_t integer(std::uint64_t m) { return eng_() % m; }

    double normal() {
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.28318530717958647692 * u2);
    }

  private:
    std::mt19937_64 eng_;
};

}  // namespace axb
