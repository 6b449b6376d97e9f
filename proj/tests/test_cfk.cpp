#include <doctest.h>

#include <algorithm>

#include "hfbord/builtins.hpp"
#include "hfbord/cfk.hpp"

using namespace hfb;

namespace {

bool has(const CFKMap& m, const CFKComplex& c, const char* s, const char* t) {
  return m.count({c.index(s), 0, 0, c.index(t)}) > 0;
}

}  // namespace

TEST_CASE("shipped complexes are complexes") {
  for (const auto& c : {unknot_cfk(), unknot_free_basepoint_cfk(), trefoil_cfk(), figure8_cfk(), l2_cfk()})
    CHECK(check_cfk(c).ok);
  CFKComplex bad;
  bad.add_gen("a", 0, 0);
  bad.add_gen("b", 0, 0);
  bad.add("a", 1, 0, "b");  // U lowers Maslov by 2, so b would need (1, 1)
  CHECK_FALSE(check_cfk(bad).ok);
  CFKComplex sq;
  sq.add_gen("a", 0, 0);
  sq.add_gen("b", -1, 0);
  sq.add_gen("c", -2, 0);
  sq.add("a", 0, 0, "b");
  sq.add("b", 0, 0, "c");
  CHECK_FALSE(check_cfk(sq).ok);
}

TEST_CASE("basepoint actions of the figure-eight") {
  auto c = figure8_cfk();
  auto pp = phi_psi(c);
  CHECK(has(pp.phi, c, "a", "b"));
  CHECK(has(pp.phi, c, "c", "d"));
  CHECK(has(pp.psi, c, "a", "c"));
  CHECK(has(pp.psi, c, "b", "d"));
  CHECK(pp.phi.size() == 2);
  CHECK(pp.psi.size() == 2);
}

TEST_CASE("involution axioms") {
  for (const auto& c : {unknot_cfk(), trefoil_cfk(), figure8_cfk()}) {
    auto r = check_involution(c);
    CHECK_MESSAGE(r.ok, r.message);
    // exactly, not just up to homotopy
    auto pp = phi_psi(c);
    CHECK(compose_skew(c.ring, *c.iota, *c.iota) ==
          identity_map(c.size()) + compose(c.ring, pp.phi, pp.psi));
  }
  auto c = figure8_cfk();
  auto r = check_involution(c, identity_map(c.size()));
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.skew);
  CHECK(check_involution(c).center == 0.0);
  CHECK(check_involution(trefoil_cfk()).center == 1.0);
}

TEST_CASE("connected sums and duals") {
  const std::vector<CFKComplex> knots = {unknot_cfk(), trefoil_cfk(), figure8_cfk()};
  for (const auto& a : knots)
    for (const auto& b : knots) {
      auto s = connected_sum(a, b);
      CHECK(s.size() == a.size() * b.size());
      CHECK(check_cfk(s).ok);
      CHECK(check_involution(s).ok);
      // Kunneth
      CHECK(hat_truncate(s).homology.dimension ==
            hat_truncate(a).homology.dimension * hat_truncate(b).homology.dimension);
    }
  for (const auto& k : knots) {
    auto d = dual(k);
    CHECK(check_cfk(d).ok);
    CHECK(check_involution(d).ok);
    auto dd = dual(d);
    CHECK(dd.delta == k.delta);
    CHECK(*dd.iota == *k.iota);
  }
}

TEST_CASE("hat truncation") {
  auto t = hat_truncate(trefoil_cfk());
  CHECK(t.homology.dimension == 3);
  REQUIRE(t.action);
  CHECK(*t.action * *t.action == BitMatrix::identity(3));
  CHECK_FALSE(*t.action == BitMatrix::identity(3));
  auto l = hat_truncate(l2_cfk());
  auto bd = l.class_bidegrees;
  std::sort(bd.begin(), bd.end());
  CHECK(bd == std::vector<std::pair<int, int>>{{-1, -1}, {0, 0}, {0, 0}, {1, 1}});
  CHECK(hat_truncate(unknot_free_basepoint_cfk()).homology.dimension == 2);
}

TEST_CASE("nullhomotopy solve") {
  auto c = figure8_cfk();
  auto z = cfk_nullhomotopy(c, {});
  REQUIRE(z);
  CHECK(z->empty());
  // Phi Psi sends a to d, which survives in hat homology
  auto pp = phi_psi(c);
  CHECK_FALSE(cfk_nullhomotopy(c, compose(c.ring, pp.phi, pp.psi)).has_value());
  // iota^2 + 1 + Phi Psi vanishes identically
  auto t = compose_skew(c.ring, *c.iota, *c.iota) + identity_map(c.size()) +
           compose(c.ring, pp.phi, pp.psi);
  CHECK(t.empty());
}

TEST_CASE("local map search") {
  auto t = local_map_search(trivial_complex(), LocalDirection::FromTrivial, 3);
  CHECK(t.found);
  CHECK(local_map_search(trivial_complex(), LocalDirection::ToTrivial, 3).found);
  auto f = over_r(figure8_cfk());
  auto r = local_map_search(f, LocalDirection::FromTrivial, 3);
  CHECK_FALSE(r.found);
  CHECK_FALSE(r.trace.empty());
  CHECK_THROWS_AS(local_map_search(f, LocalDirection::FromTrivial, 3, 1), CapExceeded);
  CHECK_THROWS_AS(local_map_search(figure8_cfk(), LocalDirection::FromTrivial, 3), std::invalid_argument);
}
