#include "hfbord/involution.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hfbord/builtins.hpp"

namespace hfb {

namespace {

BitVec flatten(const BitMatrix& m) {
  BitVec v(m.rows() * m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.get(i, j)) v.set(i * m.cols() + j);
  return v;
}

std::string bits(const BitVec& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += v.get(i) ? '1' : '0';
  return s;
}

}  // namespace

std::vector<int> minimal_polynomial(const BitMatrix& e) {
  const std::size_t n = e.rows();
  if (e.cols() != n) throw std::invalid_argument("minimal_polynomial: square matrix required");
  std::vector<BitVec> powers{flatten(BitMatrix::identity(n))};
  BitMatrix p = BitMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    p = e * p;
    powers.push_back(flatten(p));
    // columns = I, E, .., E^k; the first dependency is the minimal polynomial
    BitMatrix m(n * n, powers.size());
    for (std::size_t j = 0; j < powers.size(); ++j)
      for (auto i : powers[j].support()) m.set(i, j);
    auto ns = nullspace(m);
    if (!ns.empty()) {
      std::vector<int> c(k + 1);
      for (std::size_t j = 0; j <= k; ++j) c[j] = ns[0].get(j);
      return c;
    }
  }
  return {1};  // n == 0
}

std::string poly_string(const std::vector<int>& p) {
  const std::size_t deg = p.size() - 1;
  // (t+1)^deg has binomial coefficients mod 2
  bool power = true;
  for (std::size_t j = 0; j <= deg; ++j)
    if (p[j] != static_cast<int>((deg & j) == j)) power = false;
  if (deg == 0) return "1";
  if (power) return deg == 1 ? "t+1" : "(t+1)^" + std::to_string(deg);
  std::string s;
  for (std::size_t j = deg + 1; j-- > 0;) {
    if (!p[j]) continue;
    if (!s.empty()) s += "+";
    s += j == 0 ? "1" : j == 1 ? "t" : "t^" + std::to_string(j);
  }
  return s;
}

std::optional<BitMatrix> inverse(const BitMatrix& e) {
  const std::size_t n = e.rows();
  if (e.cols() != n || rank(e) != n) return std::nullopt;
  BitMatrix inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    BitVec u(n);
    u.set(j);
    auto x = solve(e, u);
    for (auto i : x->support()) inv.set(i, j);
  }
  return inv;
}

ActionInvariants action_invariants(const BitMatrix& e) {
  ActionInvariants inv;
  inv.dim = e.rows();
  inv.min_poly = minimal_polynomial(e);
  const BitMatrix n = e + BitMatrix::identity(e.rows());
  BitMatrix p = n;
  for (std::size_t k = 1; k <= e.rows() + 1; ++k) {
    std::size_t r = rank(p);
    if (!inv.rank_profile.empty() && inv.rank_profile.back() == r) break;
    inv.rank_profile.push_back(r);
    if (r == 0) break;
    p = n * p;
  }
  return inv;
}

std::string invariants_string(const ActionInvariants& inv) {
  std::ostringstream s;
  s << "dim " << inv.dim << ", min poly " << poly_string(inv.min_poly) << ", rank (E+id)^k:";
  for (auto r : inv.rank_profile) s << " " << r;
  return s.str();
}

ModelAndF model_and_f(const TypeDAModule& az, const ModelOptions& opt) {
  const TypeDModule p = cfd_tinf_nu();
  ModelAndF out;
  out.model = az_model();
  out.product = box_da_d(az, p, opt.box);

  // optional relabelling of the product; perm[new] = old
  const std::size_t n = out.product.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  if (opt.reverse_order) std::reverse(perm.begin(), perm.end());
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[perm[i]] = i;
  TypeDModule work;
  for (std::size_t i = 0; i < n; ++i) work.gens.push_back(out.product.gens[perm[i]]);
  for (const auto& a : out.product.delta) work.add(pos[a.src], a.coef, pos[a.tgt]);

  out.transport = reduce(work);
  auto iso = iso_search(out.model, out.transport.reduced);
  if (!iso) throw std::logic_error("reduced AZ box CFD(Tinf,nu) does not match the model");
  out.to_reduced = *iso;

  // a: the i1 generator hit by r1 from the generator that also carries r3
  const std::size_t a = out.model.index("a");
  TypeDMorphism x_to_a{p.size(), out.model.size(), {}};
  x_to_a.add(0, Basis::I1, a);
  TypeDMorphism f_work = compose(out.transport.include, compose(out.to_reduced, x_to_a));
  out.f = TypeDMorphism{p.size(), n, {}};
  for (const auto& e : f_work.entries) out.f.add(e.src, e.coef, perm[e.tgt]);
  if (!is_cycle(p, out.product, out.f)) throw std::logic_error("f is not a cycle");
  return out;
}

BitMatrix hat_iota_matrix(const TypeDAModule& az, const ModelAndF& mf, const TypeDModule& cfd,
                          const TypeDMorphism& iota) {
  const TypeDModule p = cfd_tinf_nu();
  MorComplex mor(p, cfd);
  const auto& hom = mor.homology();
  BitMatrix e(hom.dimension, hom.dimension);
  for (std::size_t j = 0; j < hom.dimension; ++j) {
    TypeDMorphism h = mor.from_vector(hom.representatives[j]);
    TypeDMorphism bh = box_da_morphism(az, p, cfd, h);
    TypeDMorphism img = compose(iota, compose(bh, mf.f));
    BitVec c = mor.class_of(img);
    for (auto i : c.support()) e.set(i, j);
  }
  return e;
}

HatIotaReport hat_iota(const TypeDAModule& az, const ModelAndF& mf, const TypeDModule& cfd,
                       const TypeDMorphism& iota, bool check_equivalence) {
  if (check_equivalence && !is_equivalence(box_da_d(az, cfd), cfd, iota))
    throw std::invalid_argument("hat_iota: candidate is not a homotopy equivalence");
  HatIotaReport r;
  r.e = hat_iota_matrix(az, mf, cfd, iota);
  r.inv = action_invariants(r.e);
  r.invertible = inverse(r.e).has_value();
  r.ambiguous = !(r.e * r.e == BitMatrix::identity(r.e.rows()));
  return r;
}

std::string HatIotaReport::text() const {
  std::ostringstream s;
  s << "E on H(Mor(CFD(Tinf,nu), N)), columns are images:\n";
  for (std::size_t i = 0; i < e.rows(); ++i) s << "  " << bits(e.row(i)) << "\n";
  s << invariants_string(inv) << "\n";
  const bool sq = !ambiguous;
  const std::size_t r1 = inv.rank_profile.empty() ? 0 : inv.rank_profile[0];
  s << (sq ? "E^2=id" : "E^2!=id") << ", rank(E+id)=" << r1
    << (r1 == 0 ? ", E=id" : ", E!=id") << "\n";
  s << (invertible ? "E invertible" : "E NOT invertible") << "; "
    << (ambiguous ? "ambiguous: iota or iota^-1" : "unambiguous: E = E^-1") << "\n";
  return s.str();
}

TypeDMorphism class_representative(const MorComplex& m, const BitVec& coords) {
  const auto& hom = m.homology();
  BitVec v(m.dim());
  for (auto i : coords.support()) v ^= hom.representatives[i];
  return m.from_vector(v);
}

namespace {

void check_cap(std::size_t k, std::size_t cap, const char* what) {
  if (k >= 63 || (std::size_t(1) << k) > cap)
    throw CapExceeded(std::string(what) + ": 2^" + std::to_string(k) +
                      " classes exceed the enumeration cap " + std::to_string(cap));
}

BitVec mask_vec(std::size_t k, std::size_t mask) {
  BitVec v(k);
  for (std::size_t i = 0; i < k; ++i)
    if ((mask >> i) & 1) v.set(i);
  return v;
}

}  // namespace

std::vector<BitVec> invertible_classes(const TypeDModule& n1, const TypeDModule& n2,
                                       std::size_t cap) {
  MorComplex m(n1, n2);
  const std::size_t k = m.homology().dimension;
  check_cap(k, cap, "invertible_classes");
  std::vector<BitVec> out;
  for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
    BitVec c = mask_vec(k, mask);
    if (is_equivalence(n1, n2, class_representative(m, c))) out.push_back(c);
  }
  return out;
}

std::optional<TypeDMorphism> find_equivalence(const TypeDAModule& az, const TypeDModule& cfd,
                                              std::size_t cap) {
  TypeDModule box = box_da_d(az, cfd);
  ReductionData red = reduce(box);
  try {
    if (auto iso = iso_search(red.reduced, cfd)) {
      TypeDMorphism f = compose(*iso, red.project);
      if (is_equivalence(box, cfd, f)) return f;
    }
  } catch (const CapExceeded&) {
  }
  MorComplex m(box, cfd);
  const std::size_t k = m.homology().dimension;
  check_cap(k, cap, "find_equivalence");
  for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
    TypeDMorphism f = class_representative(m, mask_vec(k, mask));
    if (is_equivalence(box, cfd, f)) return f;
  }
  return std::nullopt;
}

SolveResult solve_involution(const TypeDAModule& az, const ModelAndF& mf, const TypeDModule& cfd,
                             const ActionInvariants& known, const TypeDMorphism& base,
                             const std::vector<NamedMap>& basis, std::size_t cap) {
  SolveResult res;
  res.base = base;
  res.base_report = hat_iota(az, mf, cfd, base);

  MorComplex end(cfd, cfd);
  res.end_dim = end.homology().dimension;
  std::vector<NamedMap> gens = basis;
  if (gens.empty()) {
    for (std::size_t i = 0; i < res.end_dim; ++i)
      gens.push_back({"h" + std::to_string(i), class_representative(end, mask_vec(res.end_dim, std::size_t(1) << i))});
  }
  for (const auto& g : gens)
    if (!is_cycle(cfd, cfd, g.map)) throw std::invalid_argument("correction " + g.name + " is not a cycle");
  check_cap(gens.size(), cap, "solve_involution");

  // E is linear in the correction: E((id+g) o F) = E(F) + sum E(g_i o F).
  std::vector<BitMatrix> parts;
  for (const auto& g : gens) parts.push_back(hat_iota_matrix(az, mf, cfd, compose(g.map, base)));

  const TypeDMorphism id = identity_morphism(cfd);
  for (std::size_t mask = 0; mask < (std::size_t(1) << gens.size()); ++mask) {
    ++res.examined;
    BitMatrix e = res.base_report.e;
    TypeDMorphism g = zero_morphism(cfd, cfd);
    std::string expr = "id";
    for (std::size_t i = 0; i < gens.size(); ++i)
      if ((mask >> i) & 1) {
        e = e + parts[i];
        g += gens[i].map;
        expr += "+" + gens[i].name;
      }
    auto einv = inverse(e);
    if (!einv) continue;
    ActionInvariants inv = action_invariants(e);
    if (!(inv == known) && !(action_invariants(*einv) == known)) continue;
    TypeDMorphism corr = id;
    corr += g;
    if (!is_equivalence(cfd, cfd, corr)) continue;
    SolveCandidate c;
    c.correction = end.class_of(g);
    c.expression = expr;
    c.iota = compose(corr, base);
    c.report.e = e;
    c.report.inv = inv;
    c.report.invertible = true;
    c.report.ambiguous = !(e * e == BitMatrix::identity(e.rows()));
    res.candidates.push_back(std::move(c));
  }
  return res;
}

std::string SolveResult::text() const {
  std::ostringstream s;
  s << "base equivalence F: " << invariants_string(base_report.inv) << "\n";
  s << "End homology dimension " << end_dim << ", corrections examined " << examined << "\n";
  s << candidates.size() << " matching candidate(s)\n";
  for (const auto& c : candidates)
    s << "  (" << c.expression << ") o F, class " << bits(c.correction) << ": "
      << invariants_string(c.report.inv) << "\n";
  return s.str();
}

MainThm1Report check_mainthm1(const TypeDAModule& az, const TypeDModule& cfd1,
                              const TypeDModule& cfd2, const TypeDMorphism& g,
                              const TypeDMorphism& iota1, const TypeDMorphism& iota2) {
  const TypeDModule box1 = box_da_d(az, cfd1), box2 = box_da_d(az, cfd2);
  if (!is_cycle(cfd1, cfd2, g)) throw std::invalid_argument("check_mainthm1: g is not a cycle");
  if (!is_cycle(box1, cfd1, iota1)) throw std::invalid_argument("check_mainthm1: iota1 is not a cycle");
  if (!is_cycle(box2, cfd2, iota2)) throw std::invalid_argument("check_mainthm1: iota2 is not a cycle");
  MainThm1Report r;
  TypeDMorphism sq = compose(g, iota1);
  sq += compose(iota2, box_da_morphism(az, cfd1, cfd2, g));
  r.square = nullhomotopy(box1, cfd2, sq).has_value();

  const TypeDModule p = cfd_tinf_nu();
  MorComplex m1(p, cfd1), m2(p, cfd2);
  const auto& h1 = m1.homology();
  if (h1.dimension == m2.homology().dimension) {
    BitMatrix e(h1.dimension, h1.dimension);
    for (std::size_t j = 0; j < h1.dimension; ++j)
      for (auto i : m2.class_of(compose(g, m1.from_vector(h1.representatives[j]))).support())
        e.set(i, j);
    r.pairing = rank(e) == h1.dimension;
  }
  return r;
}

std::string MainThm1Report::text() const {
  std::ostringstream s;
  s << "(i) g o iota1 + iota2 o (id box g) nullhomotopic: " << (square ? "pass" : "fail") << "\n";
  s << "(ii) proxy pairing, h |-> g o h iso on H(Mor(CFD(Tinf,nu), -)): "
    << (pairing ? "pass" : "fail") << "\n";
  s << (ok() ? "bordered local-triviality check passes" : "bordered local-triviality check fails")
    << "\n";
  return s.str();
}

}  // namespace hfb
