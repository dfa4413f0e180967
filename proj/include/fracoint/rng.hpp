#ifndef FRACOINT_RNG_HPP
#define FRACOINT_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace fracoint {

// splitmix64 finalizer, used as the seed-mixing hash.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Seed for sub-stream `stream` of `base`. Replication k of a Monte Carlo run
// uses derive_seed(master_seed, k); nested streams derive again.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base ^ splitmix64(stream ^ 0xD1B54A32D192ED03ull));
}

// Standard-normal stream: mt19937_64 driving a Box-Muller pair transform.
// The transform is written out here instead of using std::normal_distribution
// so the value stream does not depend on the standard library implementation.
class GaussianStream {
public:
  explicit GaussianStream(std::uint64_t seed) : gen_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * kTwoPiHalf * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

private:
  // (0,1]; the +1 keeps log() away from zero.
  double uniform01() { return static_cast<double>((gen_() >> 11) + 1) * 0x1p-53; }

  static constexpr double kTwoPiHalf = 3.14159265358979323846;
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace fracoint

#endif
