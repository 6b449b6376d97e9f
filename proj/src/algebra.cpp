#include "hfbord/algebra.hpp"

namespace hfb {

namespace {

constexpr int kZero = -1;

// kProduct[a][b]: index of a*b or -1. Rows/cols in Basis order
// i0 i1 r1 r2 r3 r12 r23 r123.
constexpr int kProduct[8][8] = {
    /* i0   */ {0, kZero, 2, kZero, 4, 5, kZero, 7},
    /* i1   */ {kZero, 1, kZero, 3, kZero, kZero, 6, kZero},
    /* r1   */ {kZero, 2, kZero, 5, kZero, kZero, 7, kZero},
    /* r2   */ {3, kZero, kZero, kZero, 6, kZero, kZero, kZero},
    /* r3   */ {kZero, 4, kZero, kZero, kZero, kZero, kZero, kZero},
    /* r12  */ {5, kZero, kZero, kZero, 7, kZero, kZero, kZero},
    /* r23  */ {kZero, 6, kZero, kZero, kZero, kZero, kZero, kZero},
    /* r123 */ {kZero, 7, kZero, kZero, kZero, kZero, kZero, kZero},
};

constexpr Basis kLeft[8] = {Basis::I0, Basis::I1, Basis::I0, Basis::I1,
                            Basis::I0, Basis::I0, Basis::I1, Basis::I0};
constexpr Basis kRight[8] = {Basis::I0, Basis::I1, Basis::I1, Basis::I0,
                             Basis::I1, Basis::I0, Basis::I1, Basis::I1};
constexpr const char* kTokens[8] = {"i0", "i1", "r1", "r2", "r3", "r12", "r23", "r123"};

}  // namespace

std::optional<Basis> multiply(Basis a, Basis b) {
  int p = kProduct[int(a)][int(b)];
  if (p == kZero) return std::nullopt;
  return Basis(p);
}

Basis left_idempotent(Basis b) { return kLeft[int(b)]; }
Basis right_idempotent(Basis b) { return kRight[int(b)]; }

const char* token(Basis b) { return kTokens[int(b)]; }

std::optional<Basis> parse_basis(std::string_view s) {
  for (int i = 0; i < 8; ++i)
    if (s == kTokens[i]) return Basis(i);
  return std::nullopt;
}

std::vector<Basis> AlgebraElement::terms() const {
  std::vector<Basis> out;
  for (Basis b : kAllBasis)
    if (contains(b)) out.push_back(b);
  return out;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  AlgebraElement out;
  for (Basis x : a.terms())
    for (Basis y : b.terms())
      if (auto p = multiply(x, y)) out += *p;
  return out;
}

std::string AlgebraElement::str() const {
  if (is_zero()) return "0";
  std::string s;
  for (Basis b : terms()) {
    if (!s.empty()) s += "+";
    s += token(b);
  }
  return s;
}

}  // namespace hfb
