// Copyright 2026 The fdsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>

namespace fdsim {

/// Names an independent random substream. Two engines built from equal
/// handles produce identical sequences on every platform and thread.
struct RngHandle {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const RngHandle&, const RngHandle&) = default;
};

/// Philox4x32-10 counter-based block function.
///
/// The 64-bit key is the seed; the 128-bit counter is split into the stream
/// id (high word) and the block position within the stream (low word).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                        std::array<std::uint32_t, 2> key);

/// Sequential generator over one substream. Cheap to construct; not shared
/// between threads.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(RngHandle handle);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64();

  /// Uniform on the open interval (0, 1).
  double uniform();

  /// Standard normal via the Box-Muller transform.
  double normal();

  RngHandle handle() const { return handle_; }

 private:
  void refill();

  RngHandle handle_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int used_ = 4;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

/// Substream layout used by the Monte Carlo engine: a domain tag in the top
/// byte, the trial index in the middle, and the redraw attempt in the low byte.
enum class StreamDomain : std::uint8_t {
  SiEmpirical = 1,
  SiTheoretical = 2,
  Sinr = 3,
};

constexpr std::uint64_t kMaxTrialsPerDomain = std::uint64_t{1} << 48;
constexpr unsigned kMaxRedrawAttempts = 256;

constexpr std::uint64_t trial_stream(StreamDomain domain, std::uint64_t trial,
                                     unsigned attempt = 0) {
  return (static_cast<std::uint64_t>(domain) << 56) |
         ((trial & (kMaxTrialsPerDomain - 1)) << 8) | (attempt & 0xffu);
}

}  // namespace fdsim
