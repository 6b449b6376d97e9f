#include <algorithm>
#include <map>

#include "hfbord/bimodule.hpp"

namespace hfb {

namespace {

struct Op {
  std::size_t src;
  std::vector<Basis> in;
  Basis out;
  std::size_t tgt;
  auto key() const { return std::tie(src, in, out, tgt); }
  bool operator<(const Op& o) const { return key() < o.key(); }
};

void tog(std::set<Op>& s, Op o) {
  auto [it, ins] = s.insert(std::move(o));
  if (!ins) s.erase(it);
}

std::vector<Basis> cat(std::vector<Basis> a, const std::vector<Basis>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

ReduceDAResult reduce_da(const TypeDAModule& m, const ReduceDAOptions& opt) {
  if (m.has_star()) throw std::invalid_argument("reduce_da needs operations without r12 repetition");
  const std::size_t cap = opt.allow_truncation ? opt.cap : std::size_t(-1);
  ReduceDAResult res;
  std::set<Op> ops;
  for (const auto& o : m.ops) {
    if (o.in.min_length() > cap) {
      res.truncated = true;
      continue;
    }
    ops.insert({o.src, o.in.sequence(), o.out, o.tgt});
  }
  std::vector<bool> alive(m.gens.size(), true);

  while (true) {
    // candidate x -> y with empty input and idempotent output
    std::optional<Op> best;
    std::tuple<std::size_t, std::size_t, std::string, std::string> best_rank;
    for (const auto& o : ops) {
      if (!o.in.empty() || !is_idempotent(o.out) || o.src == o.tgt) continue;
      std::size_t extra = 0, in_y = 0, out_x = 0;
      for (const auto& q : ops) {
        if (q.src == o.src && q.tgt == o.tgt && q.key() != o.key()) ++extra;
        if (q.tgt == o.tgt && q.src != o.src && q.src != o.tgt) ++in_y;
        if (q.src == o.src && q.tgt != o.src && q.tgt != o.tgt) ++out_x;
      }
      // strict mode cancels only arrows that are the whole x -> y coefficient
      if (extra > 0 && !opt.allow_truncation) continue;
      // fewest extra terms, then fewest new operations
      auto rank = std::tuple(extra, in_y * out_x, m.gens[o.src].name, m.gens[o.tgt].name);
      if (!best || rank < best_rank) {
        best = o;
        best_rank = rank;
      }
    }
    if (!best) break;
    const std::size_t x = best->src, y = best->tgt;
    std::vector<std::pair<std::vector<Basis>, Basis>> extra;
    std::vector<Op> into_y, from_x;
    std::set<Op> next;
    for (const auto& q : ops) {
      if (q.src == x && q.tgt == y && q.key() != best->key()) extra.push_back({q.in, q.out});
      if (q.tgt == y && q.src != x && q.src != y) into_y.push_back(q);
      if (q.src == x && q.tgt != x && q.tgt != y) from_x.push_back(q);
      if (q.src != x && q.src != y && q.tgt != x && q.tgt != y) next.insert(q);
    }
    // S = sum over words in the extra operations (the inverse of the x -> y coefficient)
    std::map<std::pair<std::vector<Basis>, std::optional<Basis>>, bool> series;
    series[{{}, std::nullopt}] = true;
    std::vector<std::pair<std::vector<Basis>, std::optional<Basis>>> frontier{{{}, std::nullopt}};
    while (!frontier.empty()) {
      std::vector<std::pair<std::vector<Basis>, std::optional<Basis>>> nf;
      for (const auto& [in, c] : frontier)
        for (const auto& [i2, c2] : extra) {
          auto p = c ? multiply(*c, c2) : std::optional<Basis>(c2);
          if (!p) continue;
          if (in.size() + i2.size() > cap) {
            res.truncated = true;
            continue;
          }
          nf.push_back({cat(in, i2), p});
        }
      for (const auto& k : nf) series[k] = !series[k];
      frontier = std::move(nf);
    }
    for (const auto& w : into_y)
      for (const auto& [sk, on] : series) {
        if (!on) continue;
        auto p0 = sk.second ? multiply(w.out, *sk.second) : std::optional<Basis>(w.out);
        if (!p0) continue;
        for (const auto& z : from_x) {
          auto p = multiply(*p0, z.out);
          if (!p) continue;
          if (w.in.size() + sk.first.size() + z.in.size() > cap) {
            res.truncated = true;
            continue;
          }
          tog(next, {w.src, cat(cat(w.in, sk.first), z.in), *p, z.tgt});
        }
      }
    ops = std::move(next);
    alive[x] = alive[y] = false;
  }

  std::vector<std::size_t> newidx(m.gens.size());
  for (std::size_t i = 0; i < m.gens.size(); ++i)
    if (alive[i]) newidx[i] = res.reduced.add_gen(m.gens[i].name, m.gens[i].out_idem, m.gens[i].in_idem);
  for (const auto& o : ops) {
    res.reduced.add(newidx[o.src], o.in, o.out, newidx[o.tgt]);
    if (o.in.empty() && is_idempotent(o.out) && o.src != o.tgt) res.complete = false;
  }
  return res;
}

namespace {

using Seq = std::vector<Basis>;
using OpMap = std::map<std::pair<std::size_t, Seq>, std::vector<std::pair<Basis, std::size_t>>>;

OpMap concrete(const TypeDAModule& m, std::size_t cap) {
  OpMap out;
  for (const auto& o : m.ops)
    for (auto& s : o.in.expand(cap)) out[{o.src, s}].push_back({o.out, o.tgt});
  return out;
}

// Linear solve for f_{>1} given the generator bijection f1.
bool solve_morphism(const TypeDAModule& x, const TypeDAModule& y, const OpMap& dx,
                    const OpMap& dy, const std::vector<std::size_t>& f1, std::size_t cap) {
  // f entries per (x, seq): (coefficient, target, column or -1 for the fixed part)
  std::map<std::pair<std::size_t, Seq>, std::vector<std::tuple<Basis, std::size_t, long>>> f;
  long ncols = 0;
  for (std::size_t g = 0; g < x.gens.size(); ++g) {
    f[{g, {}}].push_back({idempotent(x.gens[g].out_idem), f1[g], -1});
    for (const auto& s : composable_sequences(x.gens[g].in_idem, cap - 1)) {
      if (s.empty()) continue;
      int e = right_idem(s.back());
      for (std::size_t t = 0; t < y.gens.size(); ++t) {
        if (y.gens[t].in_idem != e) continue;
        for (Basis c : kAllBasis)
          if (left_idem(c) == x.gens[g].out_idem && right_idem(c) == y.gens[t].out_idem)
            f[{g, s}].push_back({c, t, ncols++});
      }
    }
  }
  auto fat = [&](std::size_t g, const Seq& s) -> const std::vector<std::tuple<Basis, std::size_t, long>>* {
    auto it = f.find({g, s});
    return it == f.end() ? nullptr : &it->second;
  };
  auto dat = [](const OpMap& d, std::size_t g, const Seq& s) -> const std::vector<std::pair<Basis, std::size_t>>* {
    auto it = d.find({g, s});
    return it == d.end() ? nullptr : &it->second;
  };

  std::vector<BitVec> rows;
  std::vector<bool> rhs;
  for (std::size_t g = 0; g < x.gens.size(); ++g) {
    for (const auto& s : composable_sequences(x.gens[g].in_idem, cap)) {
      std::map<std::pair<Basis, std::size_t>, std::pair<std::set<long>, bool>> eq;
      auto add = [&](Basis p, std::size_t z, long col) {
        auto& [cols, c] = eq[{p, z}];
        if (col < 0) c = !c;
        else if (!cols.insert(col).second) cols.erase(col);
      };
      for (std::size_t i = 0; i <= s.size(); ++i) {
        Seq head(s.begin(), s.begin() + i), rest(s.begin() + i, s.end());
        if (auto fe = fat(g, head))
          for (auto [fc, t, col] : *fe)
            if (auto de = dat(dy, t, rest))
              for (auto [c2, z] : *de)
                if (auto p = multiply(fc, c2)) add(*p, z, col);
        if (auto de = dat(dx, g, head))
          for (auto [c1, t] : *de)
            if (auto fe = fat(t, rest))
              for (auto [fc, z, col] : *fe)
                if (auto p = multiply(c1, fc)) add(*p, z, col);
      }
      for (std::size_t j = 0; j + 1 < s.size(); ++j) {
        auto mgd = multiply(s[j], s[j + 1]);
        if (!mgd) continue;
        Seq s2(s.begin(), s.begin() + j);
        s2.push_back(*mgd);
        s2.insert(s2.end(), s.begin() + j + 2, s.end());
        if (auto fe = fat(g, s2))
          for (auto [fc, z, col] : *fe) add(fc, z, col);
      }
      for (const auto& [k, v] : eq) {
        if (v.first.empty() && !v.second) continue;
        if (v.first.empty()) return false;
        BitVec r{static_cast<std::size_t>(ncols)};
        for (long c : v.first) r.set(std::size_t(c));
        rows.push_back(std::move(r));
        rhs.push_back(v.second);
      }
    }
  }
  if (rows.empty()) return true;
  BitMatrix a = BitMatrix::from_rows(rows, std::size_t(ncols));
  BitVec b(rows.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) b.set(i, rhs[i]);
  return solve(a, b).has_value();
}

}  // namespace

bool da_isomorphic(const TypeDAModule& x, const TypeDAModule& y, std::size_t cap) {
  if (x.gens.size() != y.gens.size()) return false;
  if (cap == 0) throw std::invalid_argument("da_isomorphic needs cap >= 1");
  auto dx = concrete(x, cap), dy = concrete(y, cap);
  // bijections preserving (out, in) idempotents, tried in lexicographic order
  std::vector<std::size_t> perm(y.gens.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::size_t tried = 0;
  do {
    bool ok = true;
    for (std::size_t g = 0; g < perm.size() && ok; ++g)
      ok = x.gens[g].out_idem == y.gens[perm[g]].out_idem &&
           x.gens[g].in_idem == y.gens[perm[g]].in_idem;
    if (!ok) continue;
    if (++tried > 5040) throw CapExceeded("too many candidate generator bijections");
    if (solve_morphism(x, y, dx, dy, perm, cap)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

TypeDAModule rename_canonical(const TypeDAModule& m, const std::string& prefix) {
  std::vector<std::size_t> order(m.gens.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ga = m.gens[a];
    const auto& gb = m.gens[b];
    return std::tie(ga.out_idem, ga.in_idem, ga.name) < std::tie(gb.out_idem, gb.in_idem, gb.name);
  });
  TypeDAModule r;
  std::vector<std::size_t> to(m.gens.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto& g = m.gens[order[k]];
    to[order[k]] = r.add_gen(prefix + std::to_string(k), g.out_idem, g.in_idem);
  }
  for (const auto& o : m.ops) r.add(DAOp{to[o.src], o.in, o.out, to[o.tgt]});
  return r;
}

}  // namespace hfb
