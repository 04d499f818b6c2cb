// Copyright 2026 The inarlab Authors
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

#include "inarlab/rng.hpp"

namespace inarlab {

namespace philox {

Block encrypt(Block ctr, Key key) noexcept {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
    ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
           static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
           static_cast<std::uint32_t>(p0)};
  }
  return ctr;
}

}  // namespace philox

namespace {

philox::Key as_key(std::uint64_t k) {
  return {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
}

std::uint64_t lo_word(const philox::Block& b) {
  return (static_cast<std::uint64_t>(b[1]) << 32) | b[0];
}

std::uint64_t hi_word(const philox::Block& b) {
  return (static_cast<std::uint64_t>(b[3]) << 32) | b[2];
}

std::array<std::uint64_t, 4> stream_state(std::uint64_t seed,
                                          std::uint64_t stream_id) {
  const auto s_lo = static_cast<std::uint32_t>(stream_id);
  const auto s_hi = static_cast<std::uint32_t>(stream_id >> 32);
  const philox::Block a = philox::encrypt({0, 0, s_lo, s_hi}, as_key(seed));
  const philox::Block b = philox::encrypt({1, 0, s_lo, s_hi}, as_key(seed));
  std::array<std::uint64_t, 4> s{lo_word(a), hi_word(a), lo_word(b), hi_word(b)};
  // The all-zero state is the one fixed point; Philox is a bijection, so this
  // happens for exactly one stream per seed out of 2^64.
  if ((s[0] | s[1] | s[2] | s[3]) == 0) s[0] = 0x9E3779B97F4A7C15ull;
  return s;
}

}  // namespace

std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a,
                         std::uint64_t b) noexcept {
  const philox::Block out = philox::encrypt(
      {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
       static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)},
      as_key(seed));
  return lo_word(out);
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_id_(stream_id), engine_(stream_state(seed, stream_id)) {}

}  // namespace inarlab
