#pragma once

#include <cstdint>
#include <cmath>
#include <numbers>
#include <random>

namespace eqf {

/// Name recorded in output headers so a reader can re-derive the streams.
inline constexpr const char* kGeneratorName = "mt19937_64-boxmuller";

/// Deterministic standard-normal sampler: mt19937_64 uniforms pushed through
/// Box-Muller. std::normal_distribution is implementation-defined, so the
/// transform is spelled out here to pin the stream across toolchains.
class NormalSampler {
public:
  explicit NormalSampler(std::uint64_t seed) : gen_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

private:
  double uniform01() {
    // 53 random bits into [0, 1), exact in double.
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 gen_;
  double spare_{0};
  bool have_spare_{false};
};

/// Stream-splitting constant so landmark draws and measurement noise never
/// share a generator state even when configured from one seed.
[[nodiscard]] inline std::uint64_t noise_stream_seed(std::uint64_t seed) {
  return seed ^ 0x9e3779b97f4a7c15ull;
}

}  // namespace eqf
