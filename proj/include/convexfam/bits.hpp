// Copyright 2026 The convexfam Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace convexfam {

/// Subset of a ground index set {0..63}; bit k stands for id k+1.
using Mask = std::uint64_t;

inline constexpr int kMaxGroundIds = 64;

constexpr Mask bit(int k) { return Mask{1} << k; }

constexpr Mask full_mask(int n) {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

constexpr int popcount(Mask m) { return std::popcount(m); }

constexpr int lowest(Mask m) { return std::countr_zero(m); }

constexpr bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }

/// Lexicographic order on the sorted id sequences of two subsets, where a
/// sequence that ends early sorts after its extensions (so {1,2,3} < {1,2}).
constexpr bool mask_lex_less(Mask a, Mask b) {
  if (a == b) return false;
  Mask diff = a ^ b;
  return (a & (diff & (~diff + 1))) != 0;
}

/// 1-based ids of the set bits, ascending.
inline std::vector<int> mask_ids(Mask m) {
  std::vector<int> out;
  out.reserve(popcount(m));
  while (m) {
    out.push_back(lowest(m) + 1);
    m &= m - 1;
  }
  return out;
}

inline Mask mask_from_ids(const std::vector<int>& ids, int universe) {
  Mask m = 0;
  for (int id : ids) {
    if (id < 1 || id > universe)
      throw std::invalid_argument("id " + std::to_string(id) +
                                  " outside 1.." + std::to_string(universe));
    m |= bit(id - 1);
  }
  return m;
}

/// Calls f(k) for every set bit k (0-based), ascending.
template <class F>
void for_each_bit(Mask m, F&& f) {
  while (m) {
    f(lowest(m));
    m &= m - 1;
  }
}

}  // namespace convexfam
