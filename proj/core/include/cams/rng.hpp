#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace cams {

/// Independent pseudo-random stream derived from a master seed and a name.
/// Uniform draws are built directly from the engine bits so sequences are
/// identical across standard library implementations.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::string_view name);

  /// Uniform double in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cams
