#ifndef QDARWIN_RNG_HPP
#define QDARWIN_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace qdarwin {

// Deterministic random stream. The mt19937_64 output sequence is fixed by
// the standard; the uniform/normal transforms below are hand-rolled so the
// same seed yields bit-identical draws on every platform and stdlib.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  // Independent substream for one trial; (seed, trial) -> stream, so trials
  // can run in any order or concurrently with schedule-independent results.
  static RngStream for_trial(std::uint64_t seed, std::uint64_t trial) {
    return RngStream(mix(seed ^ mix(trial + 0x9E3779B97F4A7C15ULL)));
  }

  std::uint64_t next_u64() { return gen_(); }

  double uniform() {  // [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re, im};
  }

private:
  static std::uint64_t mix(std::uint64_t x) {  // splitmix64 finalizer
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
  }

  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

} // namespace qdarwin

#endif
