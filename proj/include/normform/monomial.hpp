#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace normform {

/// Packed exponent vector: one byte per variable slot, slot 0 in the most
/// significant byte, so integer order on keys is lexicographic order on
/// the exponent vector.
using MonoKey = std::uint64_t;

inline constexpr int kMaxSlots = 8;
inline constexpr int kMaxExponent = 255;

constexpr int slot_shift(int slot) { return 8 * (kMaxSlots - 1 - slot); }

constexpr int key_exponent(MonoKey key, int slot) {
  return static_cast<int>((key >> slot_shift(slot)) & 0xFFU);
}

constexpr MonoKey key_unit(int slot) { return MonoKey{1} << slot_shift(slot); }

/// Total degree (sum of all slot exponents); valid while the sum stays < 256.
constexpr int key_degree(MonoKey key) {
  return static_cast<int>((key * 0x0101010101010101ULL) >> 56);
}

/// Variables of the real universe: z_1..z_N, z̄_1..z̄_N, x = Re w.
struct RealVars {
  static constexpr int slots(int n) { return 2 * n + 1; }
  static int z(int k) { return k; }
  static int zbar(int n, int k) { return n + k; }
  static int x(int n) { return 2 * n; }
};

/// Variables of the holomorphic universe: z_1..z_N, w.
struct HoloVars {
  static constexpr int slots(int n) { return n + 1; }
  static int z(int k) { return k; }
  static int w(int n) { return n; }
};

/// Unpacked monomial z^ez · z̄^ezb · x^ex.
struct Monomial {
  std::vector<int> ez;
  std::vector<int> ezb;
  int ex = 0;

  [[nodiscard]] int n() const { return static_cast<int>(ez.size()); }
  [[nodiscard]] int z_degree() const;
  [[nodiscard]] int zbar_degree() const;
  [[nodiscard]] int degree() const { return z_degree() + zbar_degree() + ex; }
  [[nodiscard]] MonoKey key() const;
  static Monomial from_key(MonoKey key, int n);
  [[nodiscard]] std::string str() const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Unpacked holomorphic monomial z^ez · w^ew.
struct HoloMonomial {
  std::vector<int> ez;
  int ew = 0;

  [[nodiscard]] int n() const { return static_cast<int>(ez.size()); }
  [[nodiscard]] int z_degree() const;
  [[nodiscard]] MonoKey key() const;
  static HoloMonomial from_key(MonoKey key, int n);
  [[nodiscard]] std::string str() const;

  friend bool operator==(const HoloMonomial&, const HoloMonomial&) = default;
};

/// Maximum number of z variables supported by the packed key.
inline constexpr int kMaxN = (kMaxSlots - 1) / 2;

inline void check_n(int n) {
  if (n < 1 || n > kMaxN) {
    throw std::invalid_argument("number of z variables must be in [1, " + std::to_string(kMaxN) + "]");
  }
}

}  // namespace normform
