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

#include "curvknap/rng.h"

namespace curvknap {
namespace {

constexpr uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace

uint64_t MixBits(uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

RngStream::RngStream(uint64_t seed, uint64_t stream_id)
    : seed_(seed),
      stream_id_(stream_id),
      key_(MixBits(MixBits(seed + kGolden) ^ (stream_id * kGolden + 1))) {}

RngStream RngStream::Split(uint64_t child) const {
  return RngStream(seed_, MixBits(stream_id_ ^ MixBits(child + kGolden)) + 1);
}

uint64_t RngStream::operator()() {
  ++counter_;
  return MixBits(key_ + counter_ * kGolden);
}

double RngStream::Uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

bool RngStream::Bernoulli(double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return Uniform() < p;
}

uint64_t RngStream::Below(uint64_t bound) {
  if (bound <= 1) return 0;
  // Rejection sampling for an unbiased draw.
  const uint64_t limit = max() - max() % bound;
  uint64_t x;
  do {
    x = (*this)();
  } while (x >= limit);
  return x % bound;
}

}  // namespace curvknap
