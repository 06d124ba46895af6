/* Copyright 2026 The qsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <random>

namespace qsim {

/// A reproducible random stream. Every consumer in the library draws its
/// uniforms through uniform() so that the sequence of doubles depends only on
/// the engine output, not on the standard library's distribution classes.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Stream for trial `index` of a run seeded with `master_seed`. A pure
/// function of its arguments: the engine seed is a SplitMix64-style mix of
/// (master_seed, index), so neighbouring indices get unrelated engine seeds.
RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t index);

/// The mixed 64-bit engine seed used by derive_stream.
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t index);

}  // namespace qsim
