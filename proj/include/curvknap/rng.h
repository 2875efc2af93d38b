// Copyright 2026 The Authors.
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

#ifndef CURVKNAP_RNG_H_
#define CURVKNAP_RNG_H_

#include <cstdint>
#include <limits>

namespace curvknap {

// Counter-based random stream keyed by (seed, stream id). Draw k of a stream
// is a pure function of (seed, stream id, k), so identical keys replay
// identical draws and child streams can be handed to independent workers.
// Satisfies UniformRandomBitGenerator.
class RngStream {
 public:
  using result_type = uint64_t;

  RngStream(uint64_t seed, uint64_t stream_id);

  uint64_t seed() const { return seed_; }
  uint64_t stream_id() const { return stream_id_; }

  // Child stream; distinct `child` values give statistically independent
  // streams, and the parent's position does not affect the child.
  RngStream Split(uint64_t child) const;

  uint64_t operator()();
  static constexpr uint64_t min() { return 0; }
  static constexpr uint64_t max() {
    return std::numeric_limits<uint64_t>::max();
  }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform();
  // True with probability p (p <= 0 never, p >= 1 always).
  bool Bernoulli(double p);
  // Uniform integer in [0, bound).
  uint64_t Below(uint64_t bound);

 private:
  uint64_t seed_;
  uint64_t stream_id_;
  uint64_t key_;
  uint64_t counter_ = 0;
};

// SplitMix64 finalizer.
uint64_t MixBits(uint64_t x);

}  // namespace curvknap

#endif  // CURVKNAP_RNG_H_
