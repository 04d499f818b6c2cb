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

#pragma once

// Random streams.
//
// A stream is identified by (seed, stream_id). Its 256-bit xoshiro256++ state
// is the Philox4x32-10 encryption, under the seed as key, of the two counters
// (0, stream_id) and (1, stream_id). Distinct stream ids therefore start from
// unrelated points of a 2^256 - 1 cycle, and a stream's output depends on
// nothing but its identity, so any work decomposition that assigns streams
// by index reproduces bit-identical results regardless of scheduling.

#include <array>
#include <cstdint>
#include <limits>

namespace inarlab {

namespace philox {

using Block = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

inline constexpr std::uint32_t kMul0 = 0xD2511F53u;
inline constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
inline constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
inline constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

// Ten-round Philox4x32 bijection.
Block encrypt(Block counter, Key key) noexcept;

}  // namespace philox

// Hash (seed, a, b) to a fresh 64-bit key. Used to give every Monte Carlo cell
// and replicate its own key space.
std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a,
                         std::uint64_t b = 0) noexcept;

// xoshiro256++ from an explicit state.
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(const std::array<std::uint64_t, 4>& state) noexcept
      : s_(state) {}

  std::uint64_t next() noexcept {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  std::array<std::uint64_t, 4> s_;
};

class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  // Number of 64-bit words consumed so far.
  std::uint64_t position() const noexcept { return position_; }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return next_u64(); }

  std::uint64_t next_u64() noexcept {
    ++position_;
    return engine_.next();
  }

  // Uniform on the open interval (0, 1), 53 random bits.
  double uniform() noexcept {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t position_ = 0;
  Xoshiro256pp engine_;
};

}  // namespace inarlab
