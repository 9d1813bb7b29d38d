// Copyright 2026 The softprs Authors
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

#ifndef SOFTPRS_RANDOM_STREAM_H_
#define SOFTPRS_RANDOM_STREAM_H_

#include <cstdint>
#include <limits>
#include <vector>

namespace softprs {

// Labels for the derivation path of a RandomStream. Values are part of the
// reproducibility contract: changing one changes every downstream sample.
enum class StreamLabel : std::uint64_t {
  kReference = 1,
  kLevel = 2,
  kSweep = 3,
  kComponent = 4,
  kSolver = 5,
  kTrial = 6,
  kRun = 7,
  kGraph = 8,
  kRecursion = 9,
  kFallback = 10,
  kOracle = 11,
  kUniforms = 12,
  kSampler = 13,
};

// SplitMix64 finalizer; a bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Counter-based generator: the i-th output is a fixed hash of (key, i), so a
// stream is fully described by its key and position. Satisfies
// std::uniform_random_bit_generator.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t key) : key_(key) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    ++counter_;
    return mix64(key_ ^ mix64(counter_ * 0x9e3779b97f4a7c15ull));
  }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  // Uniform double in the open interval (0, 1).
  double open_unit();

  std::uint64_t key() const { return key_; }
  std::uint64_t position() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Deterministic, hierarchically derived random stream. A child stream is a
// pure function of (master seed, derivation path), so work split across
// threads draws identical numbers regardless of scheduling order.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  struct PathEntry {
    StreamLabel label;
    std::uint64_t index;

    bool operator==(const PathEntry&) const = default;
  };

  explicit RandomStream(std::uint64_t master_seed);

  // Independent stream for the sub-task (label, index). Does not advance
  // this stream.
  RandomStream child(StreamLabel label, std::uint64_t index) const;

  // Path-free engine keyed on (this stream, a, b) for hot loops that need
  // very many tiny streams.
  CounterRng slot(std::uint64_t a, std::uint64_t b) const;

  static constexpr result_type min() { return CounterRng::min(); }
  static constexpr result_type max() { return CounterRng::max(); }
  result_type operator()() { return engine_(); }

  // Uniform color in [1, k].
  std::int32_t color(std::int32_t k) {
    return static_cast<std::int32_t>(engine_.below(static_cast<std::uint64_t>(k))) + 1;
  }
  double open_unit() { return engine_.open_unit(); }
  std::uint64_t below(std::uint64_t bound) { return engine_.below(bound); }

  std::uint64_t master_seed() const { return master_seed_; }
  const std::vector<PathEntry>& path() const { return path_; }
  std::uint64_t key() const { return engine_.key(); }

 private:
  RandomStream(std::uint64_t master_seed, std::vector<PathEntry> path,
               std::uint64_t key);

  std::uint64_t master_seed_;
  std::vector<PathEntry> path_;
  CounterRng engine_;
};

}  // namespace softprs

#endif  // SOFTPRS_RANDOM_STREAM_H_
