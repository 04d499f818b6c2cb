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

#include <doctest.h>

#include <set>

#include "inarlab/rng.hpp"

using namespace inarlab;

TEST_SUITE("rng") {

// Known-answer vectors published with the Random123 reference implementation.
TEST_CASE("philox4x32-10 known answers") {
  using philox::Block;
  using philox::Key;
  CHECK(philox::encrypt(Block{0, 0, 0, 0}, Key{0, 0}) ==
        Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox::encrypt(Block{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                        Key{0xffffffff, 0xffffffff}) ==
        Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox::encrypt(Block{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                        Key{0xa4093822, 0x299f31d0}) ==
        Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("xoshiro256++ reference outputs") {
  Xoshiro256pp g({1, 2, 3, 4});
  CHECK(g.next() == 0x2800001ull);
  CHECK(g.next() == 0x3800067ull);
  CHECK(g.next() == 0xcc00003800067ull);
  CHECK(g.next() == 0xcc201994400b2ull);
}

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    seen.insert(x);
    seen.insert(c.next_u64());
    seen.insert(d.next_u64());
  }
  CHECK(seen.size() == 3000);
  CHECK(a.position() == 1000);
}

TEST_CASE("uniform is strictly inside the unit interval with the right mean") {
  RngStream r(1, 0);
  double sum = 0, sum2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.005));
  CHECK(sum2 / n == doctest::Approx(1.0 / 3.0).epsilon(0.005));
}

TEST_CASE("derive_key separates its arguments") {
  std::set<std::uint64_t> keys;
  for (std::uint64_t a = 0; a < 50; ++a)
    for (std::uint64_t b = 0; b < 50; ++b) keys.insert(derive_key(9, a, b));
  CHECK(keys.size() == 2500);
  CHECK(derive_key(9, 1, 2) != derive_key(9, 2, 1));
  CHECK(derive_key(9, 1, 2) != derive_key(10, 1, 2));
}

}
