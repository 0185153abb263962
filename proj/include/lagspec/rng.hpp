#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace lagspec {

using Rng = std::mt19937_64;

// Independent stream keyed by a user seed plus any number of structural keys
// (sample size, replication index, ...). The same keys always give the same
// stream, whichever thread draws from it.
inline Rng make_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> keys = {}) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * (keys.size() + 1));
  const auto push = [&words](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (const auto k : keys) push(k);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

}  // namespace lagspec
