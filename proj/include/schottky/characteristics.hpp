#pragma once

// Half-integer theta characteristics m = (m', m'') in (Z/2Z)^{2g}.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "schottky/tropical.hpp"

namespace schottky {

struct Characteristic {
  Label top = 0;     // m'
  Label bottom = 0;  // m''

  // Rows (m'_i, m''_i), i = 1..4, as printed in 4 x 2 tables.
  static Characteristic from_rows(const std::array<std::array<int, 2>, 4>& rows);
  // Bits 0..3 hold m', bits 4..7 hold m''.
  static Characteristic from_packed(std::uint32_t bits) { return {bits & 0xFU, (bits >> 4) & 0xFU}; }
  std::uint32_t packed() const { return top | (bottom << 4); }

  bool is_even() const { return label_dot(top, bottom) == 0; }
  bool is_odd() const { return !is_even(); }

  // Columns m' and m'' as bit strings, e.g. "1010|1100".
  std::string to_string() const;

  friend Characteristic operator+(Characteristic a, Characteristic b) {
    return {a.top ^ b.top, a.bottom ^ b.bottom};
  }
  friend bool operator==(const Characteristic&, const Characteristic&) = default;
};

// +1 for even, -1 for odd.
int parity_sign(const Characteristic& m);
bool is_azygetic(const Characteristic& a, const Characteristic& b, const Characteristic& c);

// All 256 characteristics for g = 4, ordered by packed value.
std::vector<Characteristic> all_characteristics();
std::vector<Characteristic> odd_characteristics();
std::vector<Characteristic> even_characteristics();

// Applies the same coordinate permutation to m' and m'': coordinate i moves to perm[i].
Characteristic permute(const Characteristic& m, const std::array<int, 4>& perm);

}  // namespace schottky
