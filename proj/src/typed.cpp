#include "hfbord/typed.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace hfb {

void toggle(std::set<Arrow>& s, const Arrow& a) {
  auto [it, inserted] = s.insert(a);
  if (!inserted) s.erase(it);
}

std::size_t TypeDModule::add_gen(const std::string& name, int idem, std::optional<Grading> g) {
  gens.push_back({name, idem, g});
  return gens.size() - 1;
}

std::optional<std::size_t> TypeDModule::find(const std::string& name) const {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return i;
  return std::nullopt;
}

std::size_t TypeDModule::index(const std::string& name) const {
  auto i = find(name);
  if (!i) throw std::out_of_range("unknown generator " + name);
  return *i;
}

std::vector<std::vector<std::pair<Basis, std::size_t>>> TypeDModule::out() const {
  std::vector<std::vector<std::pair<Basis, std::size_t>>> o(gens.size());
  for (const auto& a : delta) o[a.src].push_back({a.coef, a.tgt});
  return o;
}

TypeDMorphism& TypeDMorphism::operator+=(const TypeDMorphism& o) {
  for (const auto& e : o.entries) toggle(entries, e);
  return *this;
}

TypeDMorphism identity_morphism(const TypeDModule& n) {
  TypeDMorphism m{n.size(), n.size(), {}};
  for (std::size_t i = 0; i < n.size(); ++i) m.add(i, idempotent(n.gens[i].idem), i);
  return m;
}

TypeDMorphism zero_morphism(const TypeDModule& a, const TypeDModule& b) {
  return {a.size(), b.size(), {}};
}

TypeDMorphism delta_morphism(const TypeDModule& n) {
  return {n.size(), n.size(), n.delta};
}

CheckResult check_structure(const TypeDModule& n) {
  for (const auto& a : n.delta) {
    if (a.src >= n.size() || a.tgt >= n.size())
      return {false, "arrow endpoint out of range", std::nullopt};
    if (left_idem(a.coef) != n.gens[a.src].idem || right_idem(a.coef) != n.gens[a.tgt].idem)
      return {false,
              "idempotent mismatch on arrow " + n.gens[a.src].name + " -" + token(a.coef) +
                  "-> " + n.gens[a.tgt].name,
              a.src};
  }
  auto out = n.out();
  for (std::size_t x = 0; x < n.size(); ++x) {
    std::set<Arrow> acc;
    for (auto [c, y] : out[x])
      for (auto [c2, z] : out[y])
        if (auto p = multiply(c, c2)) toggle(acc, {x, *p, z});
    if (!acc.empty()) {
      const auto& t = *acc.begin();
      return {false,
              "structure equation fails at " + n.gens[x].name + ": term " + token(t.coef) +
                  " " + n.gens[t.tgt].name,
              x};
    }
  }
  return {};
}

std::vector<int> infer_idempotents(const std::vector<std::string>& names,
                                   const std::vector<NamedArrow>& arrows,
                                   const std::map<std::string, int>& hints) {
  std::map<std::string, std::size_t> idx;
  for (std::size_t i = 0; i < names.size(); ++i) idx[names[i]] = i;
  std::vector<int> idem(names.size(), -1);
  // edges: (neighbor, required idem of self, required idem of neighbor)
  std::vector<std::vector<std::tuple<std::size_t, int, int>>> adj(names.size());
  auto at = [&](const std::string& s) {
    auto it = idx.find(s);
    if (it == idx.end()) throw std::invalid_argument("unknown generator " + s);
    return it->second;
  };
  for (const auto& a : arrows) {
    std::size_t s = at(a.src), t = at(a.tgt);
    int ls = left_idem(a.coef), rt = right_idem(a.coef);
    adj[s].push_back({t, ls, rt});
    adj[t].push_back({s, rt, ls});
  }
  for (std::size_t start = 0; start < names.size(); ++start) {
    if (idem[start] != -1) continue;
    // collect component
    std::vector<std::size_t> comp{start};
    std::vector<bool> seen(names.size(), false);
    seen[start] = true;
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (auto& [nb, a, b] : adj[comp[k]])
        if (!seen[nb]) {
          seen[nb] = true;
          comp.push_back(nb);
        }
    // a seed: any arrow fixes its endpoints; else a hint
    std::optional<std::pair<std::size_t, int>> seed;
    for (auto v : comp)
      if (!adj[v].empty()) {
        seed = {v, std::get<1>(adj[v][0])};
        break;
      }
    if (!seed)
      for (auto v : comp)
        if (auto h = hints.find(names[v]); h != hints.end()) {
          seed = {v, h->second};
          break;
        }
    if (!seed)
      throw std::invalid_argument("generator " + names[start] +
                                  " is unconstrained; an idempotent hint is required");
    idem[seed->first] = seed->second;
    std::vector<std::size_t> stack{seed->first};
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto& [nb, self_req, nb_req] : adj[v]) {
        if (self_req != idem[v]) throw std::domain_error("no valid idempotent assignment");
        if (idem[nb] == -1) {
          idem[nb] = nb_req;
          stack.push_back(nb);
        } else if (idem[nb] != nb_req) {
          throw std::domain_error("no valid idempotent assignment");
        }
      }
    }
    for (auto v : comp)
      if (auto h = hints.find(names[v]); h != hints.end() && h->second != idem[v])
        throw std::domain_error("no valid idempotent assignment");
  }
  return idem;
}

namespace {

using Combo = std::map<std::size_t, AlgebraElement>;

void add_to(Combo& c, std::size_t k, const AlgebraElement& e) {
  if (e.is_zero()) return;
  auto& slot = c[k];
  slot += e;
  if (slot.is_zero()) c.erase(k);
}

// scale a combination on the left: a * (sum e_k k)
void add_scaled(Combo& dst, const AlgebraElement& a, const Combo& src) {
  for (const auto& [k, e] : src) add_to(dst, k, a * e);
}

std::vector<std::size_t> name_rank(const TypeDModule& n) {
  std::vector<std::size_t> order(n.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return n.gens[a].name < n.gens[b].name; });
  std::vector<std::size_t> rank(n.size());
  for (std::size_t k = 0; k < order.size(); ++k) rank[order[k]] = k;
  return rank;
}

}  // namespace

ReductionData reduce(const TypeDModule& n) {
  const std::size_t N = n.size();
  std::vector<Combo> outm(N), inm(N);
  for (const auto& a : n.delta) {
    add_to(outm[a.src], a.tgt, a.coef);
    add_to(inm[a.tgt], a.src, a.coef);
  }
  std::vector<bool> alive(N, true);
  std::vector<Combo> I(N), P(N), H(N);
  for (std::size_t i = 0; i < N; ++i) {
    I[i][i] = idempotent(n.gens[i].idem);
    P[i][i] = idempotent(n.gens[i].idem);
  }
  auto rank = name_rank(n);

  auto set_arrow = [&](std::size_t s, std::size_t t, const AlgebraElement& delta_e) {
    add_to(outm[s], t, delta_e);
    add_to(inm[t], s, delta_e);
  };

  while (true) {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    for (std::size_t x = 0; x < N; ++x) {
      if (!alive[x]) continue;
      for (const auto& [y, e] : outm[x]) {
        if (y == x || !e.contains(idempotent(n.gens[x].idem))) continue;
        if (!best || std::pair(rank[x], rank[y]) < std::pair(rank[best->first], rank[best->second]))
          best = {x, y};
      }
    }
    if (!best) break;
    auto [x, y] = *best;
    AlgebraElement iota = idempotent(n.gens[x].idem);
    AlgebraElement rest = outm[x][y] + iota;
    AlgebraElement S = iota, term = iota;
    for (int k = 0; k < 4; ++k) {
      term = term * rest;
      if (term.is_zero()) break;
      S += term;
    }
    std::vector<std::pair<std::size_t, AlgebraElement>> into_y, from_x;
    for (const auto& [w, c] : inm[y])
      if (w != x && w != y) into_y.push_back({w, c});
    for (const auto& [z, d] : outm[x])
      if (z != x && z != y) from_x.push_back({z, d});

    // homotopy, then include, then project (each uses the previous I, P)
    for (std::size_t o = 0; o < N; ++o) {
      auto it = P[o].find(y);
      if (it != P[o].end()) add_scaled(H[o], it->second * S, I[x]);
    }
    for (const auto& [w, c] : into_y) add_scaled(I[w], c * S, I[x]);
    for (std::size_t o = 0; o < N; ++o) {
      auto it = P[o].find(y);
      if (it != P[o].end()) {
        AlgebraElement a = it->second * S;
        for (const auto& [z, d] : from_x) add_to(P[o], z, a * d);
      }
      P[o].erase(x);
      P[o].erase(y);
    }
    for (const auto& [w, c] : into_y)
      for (const auto& [z, d] : from_x) set_arrow(w, z, c * S * d);
    for (std::size_t v : {x, y}) {
      for (const auto& [t, e] : Combo(outm[v])) set_arrow(v, t, e);
      for (const auto& [s, e] : Combo(inm[v])) set_arrow(s, v, e);
      alive[v] = false;
      I[v].clear();
    }
  }

  ReductionData rd;
  std::vector<std::size_t> newidx(N, std::size_t(-1));
  for (std::size_t i = 0; i < N; ++i)
    if (alive[i]) newidx[i] = rd.reduced.add_gen(n.gens[i].name, n.gens[i].idem, n.gens[i].grading);
  const std::size_t R = rd.reduced.size();
  for (std::size_t i = 0; i < N; ++i) {
    if (!alive[i]) continue;
    for (const auto& [t, e] : outm[i])
      for (Basis b : e.terms()) rd.reduced.add(newidx[i], b, newidx[t]);
  }
  rd.include = {R, N, {}};
  rd.project = {N, R, {}};
  rd.homotopy = {N, N, {}};
  for (std::size_t i = 0; i < N; ++i) {
    if (alive[i])
      for (const auto& [o, e] : I[i])
        for (Basis b : e.terms()) rd.include.add(newidx[i], b, o);
    for (const auto& [k, e] : P[i])
      for (Basis b : e.terms()) rd.project.add(i, b, newidx[k]);
    for (const auto& [o, e] : H[i])
      for (Basis b : e.terms()) rd.homotopy.add(i, b, o);
  }
  return rd;
}

TypeDMorphism compose(const TypeDMorphism& g, const TypeDMorphism& h) {
  if (h.tgt_size != g.src_size) throw std::invalid_argument("module mismatch in compose");
  std::vector<std::vector<std::pair<Basis, std::size_t>>> gout(g.src_size);
  for (const auto& e : g.entries) gout[e.src].push_back({e.coef, e.tgt});
  TypeDMorphism r{h.src_size, g.tgt_size, {}};
  for (const auto& e : h.entries)
    for (auto [b, z] : gout[e.tgt])
      if (auto p = multiply(e.coef, b)) r.add(e.src, *p, z);
  return r;
}

TypeDMorphism mor_differential(const TypeDModule& n1, const TypeDModule& n2,
                               const TypeDMorphism& h) {
  TypeDMorphism r = compose(delta_morphism(n2), h);
  r += compose(h, delta_morphism(n1));
  return r;
}

bool is_cycle(const TypeDModule& n1, const TypeDModule& n2, const TypeDMorphism& h) {
  return mor_differential(n1, n2, h).is_zero();
}

MorComplex::MorComplex(const TypeDModule& n1, const TypeDModule& n2)
    : n1_(n1.size()), n2_(n2.size()) {
  for (std::size_t x = 0; x < n1.size(); ++x)
    for (Basis b : kAllBasis) {
      if (left_idem(b) != n1.gens[x].idem) continue;
      for (std::size_t y = 0; y < n2.size(); ++y)
        if (right_idem(b) == n2.gens[y].idem) {
          index_[{x, b, y}] = basis_.size();
          basis_.push_back({x, b, y});
        }
    }
  d_ = BitMatrix(basis_.size(), basis_.size());
  auto out1 = n1.out(), out2 = n2.out();
  std::vector<std::vector<std::pair<std::size_t, Basis>>> in1(n1.size());
  for (const auto& a : n1.delta) in1[a.tgt].push_back({a.src, a.coef});
  for (std::size_t j = 0; j < basis_.size(); ++j) {
    auto [x, b, y] = basis_[j];
    for (auto [c, z] : out2[y])
      if (auto p = multiply(b, c)) d_.flip(index_.at({x, *p, z}), j);
    for (auto [w, a] : in1[x])
      if (auto p = multiply(a, b)) d_.flip(index_.at({w, *p, y}), j);
  }
}

BitVec MorComplex::to_vector(const TypeDMorphism& h) const {
  BitVec v(basis_.size());
  for (const auto& e : h.entries) {
    auto it = index_.find({e.src, e.coef, e.tgt});
    if (it == index_.end()) throw std::invalid_argument("morphism entry violates idempotents");
    v.flip(it->second);
  }
  return v;
}

TypeDMorphism MorComplex::from_vector(const BitVec& v) const {
  TypeDMorphism h{n1_, n2_, {}};
  for (std::size_t k : v.support()) h.add(basis_[k].x, basis_[k].b, basis_[k].y);
  return h;
}

TypeDMorphism MorComplex::differential(const TypeDMorphism& h) const {
  return from_vector(d_ * to_vector(h));
}

const Homology& MorComplex::homology() const {
  if (!hom_) hom_ = hfb::homology(d_, d_);
  return *hom_;
}

BitVec MorComplex::class_of(const TypeDMorphism& h) const {
  if (!coords_) coords_.emplace(homology(), d_);
  auto v = to_vector(h);
  if ((d_ * v).any()) throw std::domain_error("not a cycle");
  auto c = coords_->coords(v);
  if (!c) throw std::logic_error("cycle outside homology basis span");
  return *c;
}

std::optional<TypeDMorphism> nullhomotopy(const TypeDModule& n1, const TypeDModule& n2,
                                          const TypeDMorphism& h) {
  MorComplex m(n1, n2);
  auto v = m.to_vector(h);
  if ((m.d() * v).any()) throw std::domain_error("not a cycle");
  auto x = solve(m.d(), v);
  if (!x) return std::nullopt;
  return m.from_vector(*x);
}

TypeDModule cone(const TypeDModule& n1, const TypeDModule& n2, const TypeDMorphism& h) {
  if (!is_cycle(n1, n2, h)) throw std::domain_error("not a cycle");
  TypeDModule c;
  for (const auto& g : n1.gens) c.add_gen("s." + g.name, g.idem);
  for (const auto& g : n2.gens) c.add_gen("t." + g.name, g.idem);
  const std::size_t off = n1.size();
  for (const auto& a : n1.delta) c.add(a.src, a.coef, a.tgt);
  for (const auto& a : n2.delta) c.add(a.src + off, a.coef, a.tgt + off);
  for (const auto& e : h.entries) c.add(e.src, e.coef, e.tgt + off);
  return c;
}

bool is_equivalence(const TypeDModule& n1, const TypeDModule& n2, const TypeDMorphism& h) {
  return reduce(cone(n1, n2, h)).reduced.size() == 0;
}

bool is_bounded(const TypeDModule& n) {
  auto out = n.out();
  std::vector<int> state(n.size(), 0);  // 0 new, 1 on stack, 2 done
  std::function<bool(std::size_t)> dfs = [&](std::size_t v) {
    state[v] = 1;
    for (auto [c, t] : out[v]) {
      if (state[t] == 1) return false;
      if (state[t] == 0 && !dfs(t)) return false;
    }
    state[v] = 2;
    return true;
  };
  for (std::size_t v = 0; v < n.size(); ++v)
    if (state[v] == 0 && !dfs(v)) return false;
  return true;
}

std::optional<TypeDMorphism> iso_search(const TypeDModule& n1, const TypeDModule& n2,
                                        const IsoOptions& opt) {
  if (n1.size() > opt.max_generators || n2.size() > opt.max_generators)
    throw CapExceeded("iso_search generator cap exceeded");
  if (n1.size() != n2.size()) return std::nullopt;
  int cnt[2] = {0, 0};
  for (const auto& g : n1.gens) ++cnt[g.idem];
  for (const auto& g : n2.gens) --cnt[g.idem];
  if (cnt[0] || cnt[1]) return std::nullopt;
  const std::size_t n = n1.size();

  MorComplex mor(n1, n2);
  auto Z = nullspace(mor.d());
  // idempotent coordinates: pair (x, y) -> slot
  std::map<std::size_t, std::size_t> slot_of;  // mor basis index -> slot
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t k = 0; k < mor.dim(); ++k)
    if (is_idempotent(mor.basis()[k].b)) {
      slot_of[k] = slots.size();
      slots.push_back({mor.basis()[k].x, mor.basis()[k].y});
    }
  auto project = [&](const BitVec& z) {
    BitVec p(slots.size());
    for (std::size_t k : z.support())
      if (auto it = slot_of.find(k); it != slot_of.end()) p.set(it->second);
    return p;
  };
  std::vector<BitVec> chosen, chosen_proj;
  SpanTracker span(slots.size());
  for (const auto& z : Z) {
    auto p = project(z);
    if (span.insert(p)) {
      chosen.push_back(z);
      chosen_proj.push_back(p);
    }
  }
  const std::size_t r = chosen.size();
  BitMatrix projm(slots.size(), r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i : chosen_proj[j].support()) projm.set(i, j);
  auto combine = [&](const BitVec& coeffs) {
    BitVec z(mor.dim());
    for (std::size_t j : coeffs.support()) z ^= chosen[j];
    return mor.from_vector(z);
  };
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> slot_index;
  for (std::size_t s = 0; s < slots.size(); ++s) slot_index[slots[s]] = s;

  // Phase 1: generator bijections.
  std::vector<std::size_t> perm(n, 0);
  std::vector<bool> used(n, false);
  std::optional<TypeDMorphism> found;
  std::function<void(std::size_t)> rec = [&](std::size_t x) {
    if (found) return;
    if (x == n) {
      BitVec v(slots.size());
      for (std::size_t i = 0; i < n; ++i) v.set(slot_index.at({i, perm[i]}));
      if (!span.contains(v)) return;
      auto c = solve(projm, v);
      if (c) found = combine(*c);
      return;
    }
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y] || n2.gens[y].idem != n1.gens[x].idem) continue;
      used[y] = true;
      perm[x] = y;
      rec(x + 1);
      used[y] = false;
    }
  };
  rec(0);
  if (found) return found;

  // Phase 2: all combinations of the independent idempotent parts.
  if (r >= 63 || (std::size_t(1) << r) > opt.enumeration_cap)
    throw CapExceeded("iso_search enumeration cap exceeded");
  for (uint64_t mask = 1; mask < (uint64_t(1) << r); ++mask) {
    BitVec p(slots.size());
    for (std::size_t j = 0; j < r; ++j)
      if ((mask >> j) & 1) p ^= chosen_proj[j];
    BitMatrix m(n, n);
    for (std::size_t s : p.support()) m.set(slots[s].first, slots[s].second);
    if (rank(m) == n) {
      BitVec c(r);
      for (std::size_t j = 0; j < r; ++j)
        if ((mask >> j) & 1) c.set(j);
      return combine(c);
    }
  }
  return std::nullopt;
}

TypeDModule canonical(const TypeDModule& n) {
  std::vector<std::size_t> order(n.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return n.gens[a].name < n.gens[b].name; });
  std::vector<std::size_t> pos(n.size());
  TypeDModule c;
  for (std::size_t k = 0; k < order.size(); ++k) {
    pos[order[k]] = k;
    c.gens.push_back(n.gens[order[k]]);
  }
  for (const auto& a : n.delta) c.add(pos[a.src], a.coef, pos[a.tgt]);
  return c;
}

}  // namespace hfb
