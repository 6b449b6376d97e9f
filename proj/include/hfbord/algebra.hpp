#pragma once
// The torus algebra A(T^2): idempotents i0, i1 and the six Reeb chords.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hfb {

enum class Basis : uint8_t { I0 = 0, I1, R1, R2, R3, R12, R23, R123 };

inline constexpr int kBasisCount = 8;
inline constexpr std::array<Basis, 8> kAllBasis = {Basis::I0, Basis::I1,  Basis::R1,  Basis::R2,
                                                   Basis::R3, Basis::R12, Basis::R23, Basis::R123};
inline constexpr std::array<Basis, 6> kChords = {Basis::R1,  Basis::R2,  Basis::R3,
                                                 Basis::R12, Basis::R23, Basis::R123};

inline bool is_idempotent(Basis b) { return b == Basis::I0 || b == Basis::I1; }
inline Basis idempotent(int i) { return i == 0 ? Basis::I0 : Basis::I1; }
// 0 or 1 for an idempotent basis element.
inline int idem_index(Basis b) { return b == Basis::I0 ? 0 : 1; }

// Product of basis elements; nullopt means zero.
std::optional<Basis> multiply(Basis a, Basis b);
Basis left_idempotent(Basis b);
Basis right_idempotent(Basis b);
inline int left_idem(Basis b) { return idem_index(left_idempotent(b)); }
inline int right_idem(Basis b) { return idem_index(right_idempotent(b)); }

const char* token(Basis b);
std::optional<Basis> parse_basis(std::string_view s);

// F2-linear combination of basis elements, stored as a bitmask.
class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(Basis b) : bits_(uint8_t(1u << uint8_t(b))) {}
  static AlgebraElement from_bits(uint8_t bits) {
    AlgebraElement e;
    e.bits_ = bits;
    return e;
  }

  bool is_zero() const { return bits_ == 0; }
  bool contains(Basis b) const { return (bits_ >> uint8_t(b)) & 1u; }
  uint8_t bits() const { return bits_; }
  std::vector<Basis> terms() const;

  AlgebraElement& operator+=(const AlgebraElement& o) {
    bits_ ^= o.bits_;
    return *this;
  }
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  bool operator==(const AlgebraElement& o) const { return bits_ == o.bits_; }
  bool operator<(const AlgebraElement& o) const { return bits_ < o.bits_; }

  std::string str() const;

 private:
  uint8_t bits_ = 0;
};

}  // namespace hfb
