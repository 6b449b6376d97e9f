#include "hfbord/cfk.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace hfb {

void toggle(CFKMap& m, const CFKArrow& a) {
  auto [it, ins] = m.insert(a);
  if (!ins) m.erase(it);
}

std::size_t CFKComplex::add_gen(const std::string& name, int maslov, int alexander) {
  gens.push_back({name, maslov, alexander});
  return gens.size() - 1;
}

std::optional<std::size_t> CFKComplex::find(const std::string& name) const {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return i;
  return std::nullopt;
}

std::size_t CFKComplex::index(const std::string& name) const {
  auto i = find(name);
  if (!i) throw std::out_of_range("unknown generator " + name);
  return *i;
}

void CFKComplex::add(const std::string& src, int u, int v, const std::string& tgt) {
  toggle(delta, {index(src), u, v, index(tgt)});
}

void CFKComplex::add_iota(const std::string& src, int u, int v, const std::string& tgt) {
  if (!iota) iota.emplace();
  toggle(*iota, {index(src), u, v, index(tgt)});
}

namespace {

bool vanishes(Ring r, int u, int v) { return r == Ring::R && u > 0 && v > 0; }

std::vector<std::vector<const CFKArrow*>> by_source(const CFKMap& m, std::size_t n) {
  std::vector<std::vector<const CFKArrow*>> out(n);
  for (const auto& a : m)
    if (a.src >= out.size()) out.resize(a.src + 1);
  for (const auto& a : m) out[a.src].push_back(&a);
  return out;
}

std::size_t extent(const CFKMap& a, const CFKMap& b) {
  std::size_t n = 0;
  for (const auto* m : {&a, &b})
    for (const auto& x : *m) n = std::max({n, x.src + 1, x.tgt + 1});
  return n;
}

}  // namespace

CFKMap compose(Ring r, const CFKMap& g, const CFKMap& h) {
  auto gs = by_source(g, extent(g, h));
  CFKMap out;
  for (const auto& a : h)
    for (const auto* b : gs[a.tgt]) {
      int u = a.u + b->u, v = a.v + b->v;
      if (!vanishes(r, u, v)) toggle(out, {a.src, u, v, b->tgt});
    }
  return out;
}

CFKMap compose_skew(Ring r, const CFKMap& s, const CFKMap& h) {
  auto ss = by_source(s, extent(s, h));
  CFKMap out;
  for (const auto& a : h)
    for (const auto* b : ss[a.tgt]) {
      int u = a.v + b->u, v = a.u + b->v;
      if (!vanishes(r, u, v)) toggle(out, {a.src, u, v, b->tgt});
    }
  return out;
}

CFKMap identity_map(std::size_t n) {
  CFKMap m;
  for (std::size_t i = 0; i < n; ++i) m.insert({i, 0, 0, i});
  return m;
}

CFKMap operator+(CFKMap a, const CFKMap& b) {
  for (const auto& x : b) toggle(a, x);
  return a;
}

CFKCheck check_cfk(const CFKComplex& c) {
  auto name = [&](const CFKArrow& a) {
    return c.gens[a.src].name + " -> " + c.gens[a.tgt].name;
  };
  for (const auto& a : c.delta) {
    if (a.src >= c.size() || a.tgt >= c.size()) return {false, "arrow endpoint out of range"};
    if (a.u < 0 || a.v < 0) return {false, "negative exponent on " + name(a)};
    if (vanishes(c.ring, a.u, a.v)) return {false, "arrow " + name(a) + " has both U and V over R"};
    const auto& s = c.gens[a.src];
    const auto& t = c.gens[a.tgt];
    if (t.maslov - 2 * a.u != s.maslov - 1) return {false, "Maslov grading fails on " + name(a)};
    if (t.alexander - a.u + a.v != s.alexander) return {false, "Alexander grading fails on " + name(a)};
  }
  auto d2 = compose(c.ring, c.delta, c.delta);
  if (!d2.empty()) {
    const auto& a = *d2.begin();
    return {false, "d^2 is nonzero at " + c.gens[a.src].name};
  }
  return {};
}

PhiPsi phi_psi(const CFKComplex& c) {
  PhiPsi p;
  for (const auto& a : c.delta) {
    if (a.u % 2 == 1) toggle(p.phi, {a.src, a.u - 1, a.v, a.tgt});
    if (a.v % 2 == 1) toggle(p.psi, {a.src, a.u, a.v - 1, a.tgt});
  }
  return p;
}

std::optional<CFKMap> cfk_nullhomotopy(const CFKComplex& c, const CFKMap& target) {
  // unknowns: x |-> U^u V^v y of bidegree (+1, 0)
  std::vector<CFKArrow> unknowns;
  for (std::size_t x = 0; x < c.size(); ++x)
    for (std::size_t y = 0; y < c.size(); ++y) {
      int dm = c.gens[y].maslov - c.gens[x].maslov - 1;
      if (dm < 0 || dm % 2 != 0) continue;
      int u = dm / 2;
      int v = c.gens[x].alexander - c.gens[y].alexander + u;
      if (v < 0 || vanishes(c.ring, u, v)) continue;
      unknowns.push_back({x, u, v, y});
    }
  std::map<CFKArrow, std::size_t> row;
  auto row_of = [&](const CFKArrow& a) {
    auto [it, ins] = row.try_emplace(a, row.size());
    return it->second;
  };
  std::vector<CFKMap> cols;
  for (const auto& h : unknowns) {
    CFKMap one{h};
    cols.push_back(compose(c.ring, c.delta, one) + compose(c.ring, one, c.delta));
    for (const auto& e : cols.back()) row_of(e);
  }
  for (const auto& e : target) row_of(e);
  if (row.empty()) return CFKMap{};
  BitMatrix m(row.size(), unknowns.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& e : cols[j]) m.flip(row.at(e), j);
  BitVec b(row.size());
  for (const auto& e : target) b.flip(row.at(e));
  auto sol = solve(m, b);
  if (!sol) return std::nullopt;
  CFKMap h;
  for (std::size_t j : sol->support()) h.insert(unknowns[j]);
  return h;
}

InvolutionCheck check_involution(const CFKComplex& c, const std::optional<CFKMap>& given) {
  InvolutionCheck r;
  const CFKMap* iota = given ? &*given : (c.iota ? &*c.iota : nullptr);
  if (!iota) {
    r.ok = r.skew = false;
    r.message = "no involution data";
    return r;
  }
  // iota sends bidegree (M, A) to (M - 2(A - s), 2s - A) for one centre s
  std::optional<int> two_s;
  for (const auto& a : *iota) {
    if (a.src >= c.size() || a.tgt >= c.size() || a.u < 0 || a.v < 0 ||
        vanishes(c.ring, a.u, a.v)) {
      r.skew = false;
      r.message = "malformed involution entry";
      break;
    }
    const auto& x = c.gens[a.src];
    const auto& y = c.gens[a.tgt];
    int ts = x.alexander + y.alexander - a.u + a.v;
    if (!two_s) two_s = ts;
    bool maslov_ok = y.maslov - 2 * a.u == x.maslov - 2 * x.alexander + *two_s;
    if (ts != *two_s || !maslov_ok) {
      r.skew = false;
      r.message = "involution is not skew-graded at " + x.name;
      break;
    }
  }
  if (two_s) r.center = *two_s / 2.0;
  if (r.skew) {
    auto lhs = compose(c.ring, c.delta, *iota);
    auto rhs = compose_skew(c.ring, *iota, c.delta);
    if (lhs != rhs) {
      r.chain = false;
      r.message = "involution does not commute with the differential";
    }
  }
  if (r.skew && r.chain) {
    auto pp = phi_psi(c);
    CFKMap target = compose_skew(c.ring, *iota, *iota) + identity_map(c.size()) +
                    compose(c.ring, pp.phi, pp.psi);
    r.homotopy = cfk_nullhomotopy(c, target);
    if (!r.homotopy) {
      r.square = false;
      r.message = "iota^2 + 1 + Phi Psi is not nullhomotopic";
    }
  }
  r.ok = r.skew && r.chain && r.square;
  return r;
}

HatData hat_truncate(const CFKComplex& c, const std::optional<CFKMap>& given) {
  HatData h;
  const std::size_t n = c.size();
  for (const auto& g : c.gens) h.names.push_back(g.name);
  h.d = BitMatrix(n, n);
  for (const auto& a : c.delta)
    if (a.u == 0 && a.v == 0) h.d.flip(a.tgt, a.src);
  h.homology = homology(h.d, h.d);
  for (const auto& rep : h.homology.representatives) {
    auto s = rep.support();
    std::pair<int, int> deg{c.gens[s.front()].maslov, c.gens[s.front()].alexander};
    h.class_bidegrees.push_back(deg);
  }
  const CFKMap* iota = given ? &*given : (c.iota ? &*c.iota : nullptr);
  if (iota) {
    BitMatrix e(n, n);
    for (const auto& a : *iota)
      if (a.u == 0 && a.v == 0) e.flip(a.tgt, a.src);
    HomologyCoordinates hc(h.homology, h.d);
    const std::size_t k = h.homology.dimension;
    BitMatrix act(k, k);
    for (std::size_t j = 0; j < k; ++j) {
      auto co = hc.coords(e * h.homology.representatives[j]);
      if (!co) throw std::domain_error("involution does not preserve hat cycles");
      for (std::size_t i : co->support()) act.set(i, j);
    }
    h.action = act;
  }
  return h;
}

CFKComplex over_r(const CFKComplex& c) {
  CFKComplex r = c;
  r.ring = Ring::R;
  r.delta.clear();
  for (const auto& a : c.delta)
    if (!vanishes(Ring::R, a.u, a.v)) r.delta.insert(a);
  if (c.iota) {
    r.iota->clear();
    for (const auto& a : *c.iota)
      if (!vanishes(Ring::R, a.u, a.v)) r.iota->insert(a);
  }
  return r;
}

namespace {

// Tensor product of maps: (x (x) y) |-> f(x) (x) g(y).
CFKMap tensor(Ring r, const CFKMap& f, const CFKMap& g, std::size_t nb) {
  CFKMap out;
  for (const auto& a : f)
    for (const auto& b : g) {
      int u = a.u + b.u, v = a.v + b.v;
      if (!vanishes(r, u, v)) toggle(out, {a.src * nb + b.src, u, v, a.tgt * nb + b.tgt});
    }
  return out;
}

}  // namespace

CFKComplex connected_sum(const CFKComplex& a, const CFKComplex& b) {
  if (a.ring != b.ring) throw std::invalid_argument("connected sum needs complexes over the same ring");
  CFKComplex c;
  c.ring = a.ring;
  for (const auto& x : a.gens)
    for (const auto& y : b.gens)
      c.add_gen(x.name + "." + y.name, x.maslov + y.maslov, x.alexander + y.alexander);
  const std::size_t nb = b.size();
  c.delta = tensor(c.ring, a.delta, identity_map(nb), nb) +
            tensor(c.ring, identity_map(a.size()), b.delta, nb);
  if (a.iota && b.iota) {
    auto pa = phi_psi(a);
    auto pb = phi_psi(b);
    CFKMap prod = tensor(c.ring, *a.iota, *b.iota, nb);
    CFKMap corr = identity_map(c.size()) + tensor(c.ring, pa.phi, pb.psi, nb);
    c.iota = compose(c.ring, corr, prod);
  }
  return c;
}

CFKComplex dual(const CFKComplex& c) {
  CFKComplex d;
  d.ring = c.ring;
  for (const auto& g : c.gens) d.add_gen(g.name, -g.maslov, -g.alexander);
  for (const auto& a : c.delta) d.delta.insert({a.tgt, a.u, a.v, a.src});
  if (c.iota) {
    d.iota.emplace();
    for (const auto& a : *c.iota) d.iota->insert({a.tgt, a.v, a.u, a.src});
  }
  return d;
}

CFKComplex trivial_complex() {
  CFKComplex c;
  c.ring = Ring::R;
  c.add_gen("1", 0, 0);
  c.iota = identity_map(1);
  return c;
}

std::string describe_element(const CFKComplex& c, const CFKMap& m, std::size_t src) {
  std::string s;
  for (const auto& a : m) {
    if (a.src != src) continue;
    if (!s.empty()) s += " + ";
    if (a.u > 0) s += a.u == 1 ? "U " : "U^" + std::to_string(a.u) + " ";
    if (a.v > 0) s += a.v == 1 ? "V " : "V^" + std::to_string(a.v) + " ";
    s += c.gens[a.tgt].name;
  }
  return s.empty() ? "0" : s;
}

namespace {

struct Mono {
  int u, v;
  std::size_t g;
  auto key() const { return std::tuple(u, v, g); }
  bool operator<(const Mono& o) const { return key() < o.key(); }
};

// Monomials U^u V^v g of bidegree (m, a) with exponents <= cap.
std::vector<Mono> monomials(const CFKComplex& c, int m, int a, int cap) {
  std::vector<Mono> out;
  for (std::size_t g = 0; g < c.size(); ++g)
    for (int u = 0; u <= cap; ++u)
      for (int v = 0; v <= cap; ++v) {
        if (vanishes(c.ring, u, v)) continue;
        if (c.gens[g].maslov - 2 * u == m && c.gens[g].alexander - u + v == a)
          out.push_back({u, v, g});
      }
  return out;
}

using Elem = std::set<Mono>;

void tog(Elem& e, const Mono& m) {
  auto [it, ins] = e.insert(m);
  if (!ins) e.erase(it);
}

Elem apply(const CFKComplex& c, const CFKMap& f, const Elem& z, bool skew) {
  Elem out;
  for (const auto& m : z)
    for (const auto& a : f)
      if (a.src == m.g) {
        int u = (skew ? m.v : m.u) + a.u, v = (skew ? m.u : m.v) + a.v;
        if (!vanishes(c.ring, u, v)) tog(out, {u, v, a.tgt});
      }
  return out;
}

std::string show(const CFKComplex& c, const Elem& z) {
  CFKMap m;
  for (const auto& x : z) m.insert({0, x.u, x.v, x.g});
  return describe_element(c, m, 0);
}

// Is z (a cycle) nonzero in the homology of the localization keeping
// arrows without V (keep_u) or without U?
bool localized_nonzero(const CFKComplex& c, const Elem& z, bool keep_u) {
  const std::size_t n = c.size();
  BitMatrix d(n, n);
  for (const auto& a : c.delta)
    if (keep_u ? a.v == 0 : a.u == 0) d.flip(a.tgt, a.src);
  BitVec w(n);
  for (const auto& m : z)
    if (keep_u ? m.v == 0 : m.u == 0) w.flip(m.g);
  if (!w.any()) return false;
  return !solve(d, w).has_value();
}

LocalSearchResult from_trivial(const CFKComplex& c, int cap, std::size_t enum_cap) {
  LocalSearchResult res;
  auto cand = monomials(c, 0, 0, cap);
  auto bound = monomials(c, 1, 0, cap);
  auto image = [&](const Elem& z) { return apply(c, c.delta, z, false); };
  // cycle space of degree-(0,0) elements
  std::map<Mono, std::size_t> row;
  std::vector<Elem> dcols;
  for (const auto& m : cand) {
    dcols.push_back(image({m}));
    for (const auto& x : dcols.back()) row.try_emplace(x, row.size());
  }
  BitMatrix dm(row.size(), cand.size());
  for (std::size_t j = 0; j < dcols.size(); ++j)
    for (const auto& x : dcols[j]) dm.flip(row.at(x), j);
  auto cycles = row.empty() ? std::vector<BitVec>{} : nullspace(dm);
  if (row.empty())
    for (std::size_t j = 0; j < cand.size(); ++j) {
      BitVec e(cand.size());
      e.set(j);
      cycles.push_back(e);
    }
  if (cycles.size() >= 63 || (std::size_t(1) << cycles.size()) > enum_cap)
    throw CapExceeded("local map search: " + std::to_string(cycles.size()) +
                      "-dimensional candidate space exceeds the enumeration cap");
  res.trace.push_back("degree (0,0) cycles up to exponent " + std::to_string(cap) + ": " +
                      std::to_string((std::size_t(1) << cycles.size()) - 1) + " nonzero candidates");
  // boundaries of degree-(1,0) elements, for the iota condition
  std::map<Mono, std::size_t> brow;
  std::vector<Elem> bcols;
  for (const auto& m : bound) bcols.push_back(image({m}));
  for (const auto& m : cand) brow.try_emplace(m, brow.size());
  for (const auto& col : bcols)
    for (const auto& x : col) brow.try_emplace(x, brow.size());
  BitMatrix bm(brow.size(), bound.size());
  for (std::size_t j = 0; j < bcols.size(); ++j)
    for (const auto& x : bcols[j]) bm.flip(brow.at(x), j);

  for (std::size_t mask = 1; mask < (std::size_t(1) << cycles.size()); ++mask) {
    BitVec coeffs(cand.size());
    for (std::size_t k = 0; k < cycles.size(); ++k)
      if ((mask >> k) & 1u) coeffs ^= cycles[k];
    Elem z;
    for (std::size_t j : coeffs.support()) z.insert(cand[j]);
    std::string line = "1 -> " + show(c, z) + ":";
    bool lu = localized_nonzero(c, z, true), lv = localized_nonzero(c, z, false);
    if (!lu || !lv) {
      line += std::string(" not injective after inverting ") + (!lu ? "U" : "V");
      res.trace.push_back(line);
      continue;
    }
    Elem w = apply(c, *c.iota, z, true);
    for (const auto& m : z) tog(w, m);
    bool ok = w.empty();
    if (!ok) {
      BitVec b(brow.size());
      bool representable = true;
      for (const auto& m : w) {
        auto it = brow.find(m);
        if (it == brow.end()) {
          representable = false;
          break;
        }
        b.flip(it->second);
      }
      ok = representable && solve(bm, b).has_value();
    }
    if (!ok) {
      line += " localizations injective; iota f + f iota = " + show(c, w) + " is not a boundary";
      res.trace.push_back(line);
      continue;
    }
    line += " local and commutes with iota up to homotopy";
    res.trace.push_back(line);
    res.found = true;
    res.map = "1 -> " + show(c, z);
    return res;
  }
  return res;
}

LocalSearchResult to_trivial(const CFKComplex& c, int cap, std::size_t enum_cap) {
  LocalSearchResult res;
  // f(g) = U^u V^v 1 with the bidegree of g
  std::vector<std::optional<std::pair<int, int>>> mono(c.size());
  std::vector<std::size_t> elig;
  for (std::size_t g = 0; g < c.size(); ++g) {
    int m = c.gens[g].maslov, a = c.gens[g].alexander;
    if (m > 0 || m % 2 != 0) continue;
    int u = -m / 2, v = a + u;
    if (v < 0 || u > cap || v > cap || vanishes(c.ring, u, v)) continue;
    mono[g] = {u, v};
    elig.push_back(g);
  }
  // chain condition f o d = 0, one row per (source, monomial)
  std::map<std::tuple<std::size_t, int, int>, std::size_t> row;
  std::vector<std::vector<std::tuple<std::size_t, int, int>>> cols(elig.size());
  for (std::size_t j = 0; j < elig.size(); ++j)
    for (const auto& a : c.delta)
      if (a.tgt == elig[j]) {
        int u = a.u + mono[elig[j]]->first, v = a.v + mono[elig[j]]->second;
        if (vanishes(c.ring, u, v)) continue;
        cols[j].push_back({a.src, u, v});
        row.try_emplace({a.src, u, v}, row.size());
      }
  BitMatrix dm(row.size(), elig.size());
  for (std::size_t j = 0; j < elig.size(); ++j)
    for (const auto& k : cols[j]) dm.flip(row.at(k), j);
  std::vector<BitVec> maps;
  if (row.empty())
    for (std::size_t j = 0; j < elig.size(); ++j) {
      BitVec e(elig.size());
      e.set(j);
      maps.push_back(e);
    }
  else
    maps = nullspace(dm);
  if (maps.size() >= 63 || (std::size_t(1) << maps.size()) > enum_cap)
    throw CapExceeded("local map search: candidate space exceeds the enumeration cap");
  res.trace.push_back("degree (0,0) chain maps to R up to exponent " + std::to_string(cap) + ": " +
                      std::to_string((std::size_t(1) << maps.size()) - 1) + " nonzero candidates");
  for (std::size_t mask = 1; mask < (std::size_t(1) << maps.size()); ++mask) {
    BitVec sel(elig.size());
    for (std::size_t k = 0; k < maps.size(); ++k)
      if ((mask >> k) & 1u) sel ^= maps[k];
    std::vector<bool> on(c.size(), false);
    for (std::size_t j : sel.support()) on[elig[j]] = true;
    std::string line = "f supported on";
    for (std::size_t g = 0; g < c.size(); ++g)
      if (on[g]) line += " " + c.gens[g].name;
    line += ":";
    // localizations: f must be nonzero on the (at most one-dimensional) localized homology
    bool inj = true;
    for (bool keep_u : {true, false}) {
      const std::size_t n = c.size();
      BitMatrix d(n, n);
      for (const auto& a : c.delta)
        if (keep_u ? a.v == 0 : a.u == 0) d.flip(a.tgt, a.src);
      auto h = homology(d, d);
      BitVec fl(n);
      for (std::size_t g = 0; g < n; ++g)
        if (on[g] && (keep_u ? mono[g]->second == 0 : mono[g]->first == 0)) fl.set(g);
      if (h.dimension != 1 || !h.representatives[0].dot(fl)) inj = false;
    }
    if (!inj) {
      res.trace.push_back(line + " not injective on localized homology");
      continue;
    }
    // f iota + sigma f = H d for H of bidegree (+1, 0)
    std::map<std::tuple<std::size_t, int, int>, bool> w;
    auto add = [&](std::size_t x, int u, int v) {
      if (!vanishes(c.ring, u, v)) w[{x, u, v}] = !w[{x, u, v}];
    };
    for (const auto& a : *c.iota)
      if (on[a.tgt]) add(a.src, a.u + mono[a.tgt]->first, a.v + mono[a.tgt]->second);
    for (std::size_t g = 0; g < c.size(); ++g)
      if (on[g]) add(g, mono[g]->second, mono[g]->first);
    std::vector<std::tuple<std::size_t, int, int>> hunk;
    for (std::size_t g = 0; g < c.size(); ++g) {
      int m = c.gens[g].maslov + 1, a = c.gens[g].alexander;
      if (m > 0 || m % 2 != 0) continue;
      int u = -m / 2, v = a + u;
      if (v >= 0 && !vanishes(c.ring, u, v)) hunk.push_back({g, u, v});
    }
    std::map<std::tuple<std::size_t, int, int>, std::size_t> hrow;
    for (const auto& [k, on_] : w)
      if (on_) hrow.try_emplace(k, hrow.size());
    std::vector<std::vector<std::tuple<std::size_t, int, int>>> hcols(hunk.size());
    for (std::size_t j = 0; j < hunk.size(); ++j)
      for (const auto& a : c.delta)
        if (a.tgt == std::get<0>(hunk[j])) {
          int u = a.u + std::get<1>(hunk[j]), v = a.v + std::get<2>(hunk[j]);
          if (vanishes(c.ring, u, v)) continue;
          hcols[j].push_back({a.src, u, v});
          hrow.try_emplace({a.src, u, v}, hrow.size());
        }
    bool ok = true;
    if (!hrow.empty()) {
      BitMatrix hm(hrow.size(), hunk.size());
      for (std::size_t j = 0; j < hunk.size(); ++j)
        for (const auto& k : hcols[j]) hm.flip(hrow.at(k), j);
      BitVec b(hrow.size());
      for (const auto& [k, on_] : w)
        if (on_) b.flip(hrow.at(k));
      ok = solve(hm, b).has_value();
    }
    if (!ok) {
      res.trace.push_back(line + " localizations injective; f iota + iota f is not nullhomotopic");
      continue;
    }
    res.trace.push_back(line + " local and commutes with iota up to homotopy");
    res.found = true;
    res.map = line.substr(0, line.size() - 1);
    return res;
  }
  return res;
}

}  // namespace

LocalSearchResult local_map_search(const CFKComplex& c, LocalDirection dir, int uv_cap,
                                   std::size_t enum_cap) {
  if (c.ring != Ring::R) throw std::invalid_argument("local map search works over R");
  if (!c.iota) throw std::invalid_argument("local map search needs involution data");
  if (uv_cap < 0) throw std::invalid_argument("exponent cap must be nonnegative");
  return dir == LocalDirection::FromTrivial ? from_trivial(c, uv_cap, enum_cap)
                                            : to_trivial(c, uv_cap, enum_cap);
}

}  // namespace hfb
