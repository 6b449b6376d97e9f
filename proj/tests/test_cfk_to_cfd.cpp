#include <doctest.h>

#include "hfbord/builtins.hpp"
#include "hfbord/cfk_to_cfd.hpp"

using namespace hfb;

namespace {

// generators: one per CFK generator, l per length-l vertical or horizontal
// arrow, and 2|tau| for the unstable chain
std::size_t expected_size(const CFKComplex& c, int tau) {
  std::size_t n = c.size() + 2 * static_cast<std::size_t>(tau < 0 ? -tau : tau);
  for (const auto& a : c.delta) n += static_cast<std::size_t>(a.u + a.v);
  return n;
}

}  // namespace

TEST_CASE("printed complements") {
  auto u = over_r(unknot_cfk());
  CHECK(default_tau(u) == 0);
  CHECK(iso_search(translate(u, 0).module, cfd_t0()).has_value());

  auto t = over_r(trefoil_cfk());
  CHECK(default_tau(t) == -1);
  auto tt = translate(t, -1);
  CHECK(tt.module.size() == 7);
  CHECK(iso_search(tt.module, trefoil_cfd()).has_value());
  CHECK(tt.correspondence.size() == 3);
  for (const auto& [k, v] : tt.correspondence) CHECK(tt.module.gens[tt.module.index(v)].idem == 0);

  auto f = over_r(figure8_cfk());
  CHECK(default_tau(f) == 0);
  auto ft = translate(f, 0);
  CHECK(ft.module.size() == 9);
  CHECK(iso_search(ft.module, figure8_cfd()).has_value());
}

TEST_CASE("every tau gives a type-D structure of the expected size") {
  for (const auto& c : {over_r(unknot_cfk()), over_r(trefoil_cfk()), over_r(figure8_cfk())})
    for (int tau = -3; tau <= 3; ++tau) {
      auto m = translate(c, tau).module;
      CHECK(check_structure(m).ok);
      CHECK(m.size() == expected_size(c, tau));
      CHECK(reduce(m).reduced.size() == m.size());
    }
}

TEST_CASE("Mor with CFD(Tinf,nu) recovers hat knot homology") {
  for (const auto& c : {unknot_cfk(), trefoil_cfk(), figure8_cfk()}) {
    auto r = over_r(c);
    auto m = translate(r, default_tau(r)).module;
    CHECK(MorComplex(cfd_tinf_nu(), m).homology().dimension == hat_truncate(c).homology.dimension);
  }
}

TEST_CASE("rejected inputs") {
  CHECK_THROWS_AS(translate(over_r(trefoil_cfk()), -1, 1), std::invalid_argument);
  CHECK_THROWS_AS(translate(over_r(l2_cfk()), 0), std::invalid_argument);
  CHECK_THROWS_AS(translate(over_r(unknot_free_basepoint_cfk()), 0), std::invalid_argument);
  CFKComplex nonreduced;
  nonreduced.ring = Ring::R;
  nonreduced.add_gen("a", 0, 0);
  nonreduced.add_gen("b", -1, 0);
  nonreduced.add_gen("x", 0, 0);
  nonreduced.add("a", 0, 0, "b");
  CHECK_THROWS_AS(translate(nonreduced, 0), std::invalid_argument);
}
