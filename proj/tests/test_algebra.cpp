#include <doctest.h>

#include <optional>

#include "hfbord/algebra.hpp"

using namespace hfb;

namespace {

// Reeb chords as intervals [s, e] on the points 0 < 1 < 2 < 3 of the
// boundary arc; an endpoint p sits at idempotent p mod 2.
struct Model {
  bool idem;
  int s, e;  // for an idempotent, s = e = its index
};

Model model(Basis b) {
  switch (b) {
    case Basis::I0: return {true, 0, 0};
    case Basis::I1: return {true, 1, 1};
    case Basis::R1: return {false, 0, 1};
    case Basis::R2: return {false, 1, 2};
    case Basis::R3: return {false, 2, 3};
    case Basis::R12: return {false, 0, 2};
    case Basis::R23: return {false, 1, 3};
    case Basis::R123: return {false, 0, 3};
  }
  return {};
}

std::optional<Basis> from_model(Model m) {
  for (Basis b : kAllBasis) {
    Model x = model(b);
    if (x.idem == m.idem && x.s == m.s && x.e == m.e) return b;
  }
  return std::nullopt;
}

std::optional<Basis> oracle(Basis a, Basis b) {
  Model x = model(a), y = model(b);
  if (x.idem && y.idem) return x.s == y.s ? std::optional(a) : std::nullopt;
  if (x.idem) return x.s == y.s % 2 ? std::optional(b) : std::nullopt;
  if (y.idem) return x.e % 2 == y.s ? std::optional(a) : std::nullopt;
  if (x.e != y.s) return std::nullopt;
  return from_model({false, x.s, y.e});
}

}  // namespace

TEST_CASE("products agree with interval concatenation") {
  for (Basis a : kAllBasis)
    for (Basis b : kAllBasis) CHECK_MESSAGE(multiply(a, b) == oracle(a, b), token(a) << "*" << token(b));
}

TEST_CASE("associativity over all basis triples") {
  for (Basis a : kAllBasis)
    for (Basis b : kAllBasis)
      for (Basis c : kAllBasis) {
        AlgebraElement x = a, y = b, z = c;
        CHECK((x * y) * z == x * (y * z));
      }
}

TEST_CASE("unit and idempotents") {
  const AlgebraElement one = AlgebraElement(Basis::I0) + AlgebraElement(Basis::I1);
  for (Basis b : kAllBasis) {
    CHECK(one * b == AlgebraElement(b));
    CHECK(AlgebraElement(b) * one == AlgebraElement(b));
    CHECK(AlgebraElement(left_idempotent(b)) * b == AlgebraElement(b));
    CHECK(AlgebraElement(b) * right_idempotent(b) == AlgebraElement(b));
  }
  CHECK(AlgebraElement(Basis::I0) * Basis::I1 == AlgebraElement());
  CHECK(left_idem(Basis::R2) == 1);
  CHECK(right_idem(Basis::R2) == 0);
  CHECK(left_idem(Basis::R3) == 0);
}

TEST_CASE("printed relations") {
  CHECK(multiply(Basis::R1, Basis::R2) == Basis::R12);
  CHECK(multiply(Basis::R2, Basis::R3) == Basis::R23);
  CHECK(multiply(Basis::R12, Basis::R3) == Basis::R123);
  CHECK(multiply(Basis::R1, Basis::R23) == Basis::R123);
  CHECK_FALSE(multiply(Basis::R2, Basis::R1));
  CHECK_FALSE(multiply(Basis::R3, Basis::R2));
  CHECK_FALSE(multiply(Basis::R1, Basis::R3));
}

TEST_CASE("tokens round-trip") {
  for (Basis b : kAllBasis) CHECK(parse_basis(token(b)) == b);
  CHECK_FALSE(parse_basis("r13"));
}
