#include <doctest.h>

#include "hfbord/builtins.hpp"
#include "hfbord/typed.hpp"

using namespace hfb;

namespace {

// N plus a cancelling pair p -> q, conjugated by the automorphism id + e
// (e^2 = 0) so that the pair is tangled with N and cancelling it needs zigzags.
TypeDModule stabilize(const TypeDModule& n) {
  TypeDModule m = n;
  auto p = m.add_gen("p", 0), q = m.add_gen("q", 0);
  m.add(p, Basis::I0, q);
  std::optional<std::size_t> x0, g1;
  for (std::size_t g = 0; g < n.size(); ++g) {
    if (n.gens[g].idem == 0 && !x0) x0 = g;
    if (n.gens[g].idem == 1 && !g1) g1 = g;
  }
  TypeDMorphism a = identity_morphism(m);
  if (x0) a.add(*x0, Basis::I0, p);
  if (g1) a.add(q, Basis::R1, *g1);
  TypeDMorphism d = compose(a, compose(delta_morphism(m), a));
  TypeDModule out;
  out.gens = m.gens;
  for (const auto& e : d.entries) out.add(e.src, e.coef, e.tgt);
  return out;
}

}  // namespace

TEST_CASE("structure equation") {
  CHECK(check_structure(cfd_t0()).ok);
  CHECK(check_structure(trefoil_cfd()).ok);
  CHECK(check_structure(figure8_cfd()).ok);
  TypeDModule bad;
  bad.add_gen("x", 0);
  bad.add_gen("y", 1);
  bad.add_gen("z", 0);
  bad.add("x", Basis::R1, "y");
  bad.add("y", Basis::R2, "z");
  auto r = check_structure(bad);
  CHECK_FALSE(r.ok);
  CHECK(r.generator == bad.index("x"));
  TypeDModule wrong_idem;
  wrong_idem.add_gen("x", 1);
  wrong_idem.add_gen("y", 1);
  wrong_idem.add("x", Basis::R1, "y");
  CHECK_FALSE(check_structure(wrong_idem).ok);
}

TEST_CASE("Mor homology of the solid tori") {
  CHECK(MorComplex(cfd_t0(), cfd_t0()).homology().dimension == 2);
  CHECK(MorComplex(cfd_tinf_nu(), cfd_t0()).homology().dimension == 1);
  CHECK(MorComplex(cfd_tinf_nu(), trefoil_cfd()).homology().dimension == 3);
  CHECK(MorComplex(cfd_tinf_nu(), figure8_cfd()).homology().dimension == 5);
}

TEST_CASE("reduction is a homotopy equivalence and preserves Mor homology") {
  for (const auto& n : {trefoil_cfd(), figure8_cfd(), az_model()}) {
    TypeDModule s = stabilize(n);
    REQUIRE(check_structure(s).ok);
    auto r = reduce(s);
    CHECK(r.reduced.size() == n.size());
    CHECK(is_cycle(r.reduced, s, r.include));
    CHECK(is_cycle(s, r.reduced, r.project));
    CHECK(is_equivalence(r.reduced, s, r.include));
    CHECK(compose(r.project, r.include) == identity_morphism(r.reduced));
    CHECK(iso_search(r.reduced, n).has_value());
    CHECK(MorComplex(s, s).homology().dimension == MorComplex(n, n).homology().dimension);
  }
}

TEST_CASE("equivalences and nullhomotopies") {
  auto n = trefoil_cfd();
  CHECK(is_equivalence(n, n, identity_morphism(n)));
  CHECK_FALSE(is_equivalence(n, n, zero_morphism(n, n)));
  auto c = cone(n, n, identity_morphism(n));
  CHECK(check_structure(c).ok);
  CHECK(reduce(c).reduced.size() == 0);
  // the boundary of anything is nullhomotopic
  TypeDMorphism h = zero_morphism(n, n);
  h.add(n.index("e0"), Basis::I0, n.index("g0"));
  auto dh = mor_differential(n, n, h);
  REQUIRE(is_cycle(n, n, dh));
  CHECK(nullhomotopy(n, n, dh).has_value());
  if (!is_cycle(n, n, h)) CHECK_THROWS_AS((void)nullhomotopy(n, n, h), std::domain_error);
  CHECK_FALSE(nullhomotopy(n, n, identity_morphism(n)).has_value());
}

TEST_CASE("isomorphism search") {
  auto n = trefoil_cfd();
  // same module with generators listed in reverse and renamed
  TypeDModule m;
  for (std::size_t i = n.size(); i-- > 0;) m.add_gen("n" + n.gens[i].name, n.gens[i].idem);
  for (const auto& a : n.delta) m.add("n" + n.gens[a.src].name, a.coef, "n" + n.gens[a.tgt].name);
  auto iso = iso_search(m, n);
  REQUIRE(iso);
  CHECK(is_equivalence(m, n, *iso));
  CHECK_FALSE(iso_search(trefoil_cfd(), az_model()).has_value());
  CHECK_FALSE(iso_search(cfd_t0(), cfd_tinf_nu()).has_value());
}

TEST_CASE("idempotent inference") {
  std::vector<std::string> names = {"x", "y", "z"};
  auto idem = infer_idempotents(names, {{"x", Basis::R1, "y"}, {"y", Basis::R2, "z"}});
  CHECK(idem == std::vector<int>{0, 1, 0});
  CHECK_THROWS_AS(infer_idempotents({"x"}, {{"x", Basis::R1, "x"}}), std::domain_error);
  CHECK_THROWS_AS(infer_idempotents({"x", "w"}, {}), std::invalid_argument);
  CHECK(infer_idempotents({"x"}, {}, {{"x", 1}}) == std::vector<int>{1});
}
