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

#include "softprs/random_stream.h"

#include <utility>

namespace softprs {
namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

std::uint64_t derive_key(std::uint64_t key, std::uint64_t a, std::uint64_t b) {
  std::uint64_t h = mix64(key + kGolden);
  h = mix64(h ^ (a * 0xd1342543de82ef95ull + 0x632be59bd9b4e019ull));
  return mix64(h ^ (b * kGolden + 0x2545f4914f6cdd1dull));
}

}  // namespace

std::uint64_t CounterRng::below(std::uint64_t bound) {
  // Lemire's multiply-and-reject; exact for every bound.
  unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      m = static_cast<unsigned __int128>((*this)()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double CounterRng::open_unit() {
  for (;;) {
    const std::uint64_t bits = (*this)() >> 11;
    if (bits != 0) return static_cast<double>(bits) * 0x1.0p-53;
  }
}

RandomStream::RandomStream(std::uint64_t master_seed)
    : master_seed_(master_seed),
      engine_(mix64(master_seed ^ 0x5eed5eed5eed5eedull)) {}

RandomStream::RandomStream(std::uint64_t master_seed,
                           std::vector<PathEntry> path, std::uint64_t key)
    : master_seed_(master_seed), path_(std::move(path)), engine_(key) {}

RandomStream RandomStream::child(StreamLabel label, std::uint64_t index) const {
  std::vector<PathEntry> path = path_;
  path.push_back({label, index});
  return RandomStream(
      master_seed_, std::move(path),
      derive_key(engine_.key(), static_cast<std::uint64_t>(label), index));
}

CounterRng RandomStream::slot(std::uint64_t a, std::uint64_t b) const {
  return CounterRng(derive_key(engine_.key() ^ 0xa5a5a5a5a5a5a5a5ull, a, b));
}

}  // namespace softprs
