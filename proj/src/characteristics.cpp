#include "schottky/characteristics.hpp"

namespace schottky {

Characteristic Characteristic::from_rows(const std::array<std::array<int, 2>, 4>& rows) {
  Characteristic m;
  for (std::size_t i = 0; i < 4; ++i) {
    if (rows[i][0] & 1) m.top |= 1U << i;
    if (rows[i][1] & 1) m.bottom |= 1U << i;
  }
  return m;
}

std::string Characteristic::to_string() const {
  return label_to_string(top, 4) + "|" + label_to_string(bottom, 4);
}

int parity_sign(const Characteristic& m) { return m.is_even() ? 1 : -1; }

bool is_azygetic(const Characteristic& a, const Characteristic& b, const Characteristic& c) {
  return parity_sign(a) * parity_sign(b) * parity_sign(c) * parity_sign(a + b + c) == -1;
}

std::vector<Characteristic> all_characteristics() {
  std::vector<Characteristic> out;
  for (std::uint32_t bits = 0; bits < 256; ++bits) out.push_back(Characteristic::from_packed(bits));
  return out;
}

std::vector<Characteristic> odd_characteristics() {
  std::vector<Characteristic> out;
  for (const auto& m : all_characteristics()) {
    if (m.is_odd()) out.push_back(m);
  }
  return out;
}

std::vector<Characteristic> even_characteristics() {
  std::vector<Characteristic> out;
  for (const auto& m : all_characteristics()) {
    if (m.is_even()) out.push_back(m);
  }
  return out;
}

Characteristic permute(const Characteristic& m, const std::array<int, 4>& perm) {
  Characteristic r;
  for (std::size_t i = 0; i < 4; ++i) {
    if ((m.top >> i) & 1U) r.top |= 1U << perm[i];
    if ((m.bottom >> i) & 1U) r.bottom |= 1U << perm[i];
  }
  return r;
}

}  // namespace schottky
