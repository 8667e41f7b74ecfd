#pragma once

#include <cstdint>
#include <random>

namespace hybridnoise {

/// Seeded uniform/Gaussian source. The engine is std::mt19937_64 (period
/// 2^19937 - 1), whose output sequence is fixed by the language standard, so
/// identical seeds give identical draws on every conforming platform. All
/// variate transforms are implemented here rather than via std::*_distribution
/// (whose algorithms are implementation-defined).
///
/// Streams are single-owner: never share one instance between concurrent
/// tasks. For parallel generation derive one sub-stream per task with
/// substream_seed and concatenate in task-index order.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Gaussian by the Box-Muller cosine branch. Consumes exactly two uniforms
  /// per call (no rejection loop), keeping stream layout fixed.
  double gaussian(double mean, double sd) {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * r * std::cos(6.283185307179586476925287 * u2);
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Derives the seed of task sub-stream `task_index` from a base seed via the
/// splitmix64 finalizer. Distinct indices give decorrelated streams.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t task_index);

}  // namespace hybridnoise
