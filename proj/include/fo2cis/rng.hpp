#ifndef FO2CIS_RNG_HPP
#define FO2CIS_RNG_HPP

#include <cassert>
#include <cstdint>
#include <random>

namespace fo2cis {

// Seeded generator used everywhere randomness is needed. mt19937_64 output is
// bit-exact across platforms; the helpers below avoid std::*_distribution,
// whose output is not.
class Rng {
 public:
  explicit Rng(uint64_t seed) : gen_(seed) {}

  uint64_t next() { return gen_(); }

  // uniform in [0, n), unbiased via rejection
  uint64_t below(uint64_t n) {
    assert(n > 0);
    uint64_t limit = ~uint64_t{0} - ~uint64_t{0} % n;
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  // uniform in [0, 1)
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return unit() < p; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace fo2cis

#endif
