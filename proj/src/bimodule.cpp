#include "hfbord/bimodule.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace hfb {

bool InputPattern::matches(std::span<const Basis> seq) const {
  if (seq.size() < min_length()) return false;
  if (!star && seq.size() != min_length()) return false;
  if (!std::equal(prefix.begin(), prefix.end(), seq.begin())) return false;
  if (!std::equal(suffix.begin(), suffix.end(), seq.end() - suffix.size())) return false;
  for (std::size_t i = prefix.size(); i + suffix.size() < seq.size(); ++i)
    if (seq[i] != Basis::R12) return false;
  return true;
}

std::vector<Basis> InputPattern::sequence() const {
  if (star) throw std::logic_error("sequence() on a star pattern");
  std::vector<Basis> s = prefix;
  s.insert(s.end(), suffix.begin(), suffix.end());
  return s;
}

std::vector<std::vector<Basis>> InputPattern::expand(std::size_t max_len) const {
  std::vector<std::vector<Basis>> out;
  for (std::size_t k = 0; min_length() + k <= max_len; ++k) {
    std::vector<Basis> s = prefix;
    s.insert(s.end(), k, Basis::R12);
    s.insert(s.end(), suffix.begin(), suffix.end());
    out.push_back(std::move(s));
    if (!star) break;
  }
  return out;
}

std::size_t TypeAModule::add_gen(const std::string& name, int idem) {
  gens.push_back({name, idem});
  return gens.size() - 1;
}

std::size_t TypeAModule::index(const std::string& name) const {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return i;
  throw std::out_of_range("unknown generator " + name);
}

void TypeAModule::add(const AOp& op) {
  auto [it, ins] = ops.insert(op);
  if (!ins) ops.erase(it);
}

std::size_t TypeDAModule::add_gen(const std::string& name, int out_idem, int in_idem) {
  gens.push_back({name, out_idem, in_idem});
  return gens.size() - 1;
}

std::optional<std::size_t> TypeDAModule::find(const std::string& name) const {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].name == name) return i;
  return std::nullopt;
}

std::size_t TypeDAModule::index(const std::string& name) const {
  auto i = find(name);
  if (!i) throw std::out_of_range("unknown generator " + name);
  return *i;
}

void TypeDAModule::add(const DAOp& op) {
  auto [it, ins] = ops.insert(op);
  if (!ins) ops.erase(it);
}

bool TypeDAModule::has_star() const {
  for (const auto& o : ops)
    if (o.in.star) return true;
  return false;
}

std::size_t TypeDAModule::max_arity() const {
  std::size_t m = 0;
  for (const auto& o : ops) m = std::max(m, o.in.min_length());
  return m;
}

std::vector<std::vector<Basis>> composable_sequences(int start, std::size_t max_len) {
  std::vector<std::vector<Basis>> out{{}};
  std::vector<std::pair<std::vector<Basis>, int>> frontier{{{}, start}};
  for (std::size_t k = 0; k < max_len; ++k) {
    std::vector<std::pair<std::vector<Basis>, int>> next;
    for (const auto& [s, e] : frontier)
      for (Basis c : kChords)
        if (left_idem(c) == e) {
          auto t = s;
          t.push_back(c);
          out.push_back(t);
          next.push_back({std::move(t), right_idem(c)});
        }
    frontier = std::move(next);
  }
  return out;
}

namespace {

// Checks idempotents along an input sequence: returns the final idempotent
// or nullopt when the sequence is not composable from `start`.
std::optional<int> walk_inputs(int start, const std::vector<Basis>& seq) {
  int cur = start;
  for (Basis b : seq) {
    if (is_idempotent(b) || left_idem(b) != cur) return std::nullopt;
    cur = right_idem(b);
  }
  return cur;
}

std::optional<std::string> pattern_idempotent_error(int in_src, int in_tgt, const InputPattern& p) {
  auto a = walk_inputs(in_src, p.prefix);
  if (!a) return "inputs not composable";
  int cur = *a;
  if (p.star && cur != 0) return "r12 repetition needs idempotent i0";
  auto b = walk_inputs(cur, p.suffix);
  if (!b) return "inputs not composable";
  if (*b != in_tgt) return "input idempotent mismatch at target";
  return std::nullopt;
}

// Lookup of operations by (source, concrete input sequence).
template <class Out>
class OpIndex {
 public:
  void add_exact(std::size_t src, const std::vector<Basis>& seq, const Out& o) {
    exact_[{src, seq}].push_back(o);
  }
  void add_star(std::size_t src, const InputPattern& p, const Out& o) {
    star_.push_back({src, p, o});
  }
  template <class F>
  void each(std::size_t src, std::span<const Basis> seq, F&& f) const {
    auto it = exact_.find({src, std::vector<Basis>(seq.begin(), seq.end())});
    if (it != exact_.end())
      for (const auto& o : it->second) f(o);
    for (const auto& [s, p, o] : star_)
      if (s == src && p.matches(seq)) f(o);
  }

 private:
  std::map<std::pair<std::size_t, std::vector<Basis>>, std::vector<Out>> exact_;
  std::vector<std::tuple<std::size_t, InputPattern, Out>> star_;
};

using DAOut = std::pair<Basis, std::size_t>;

OpIndex<DAOut> index_da(const TypeDAModule& m) {
  OpIndex<DAOut> idx;
  for (const auto& o : m.ops) {
    if (o.in.star) idx.add_star(o.src, o.in, {o.out, o.tgt});
    else idx.add_exact(o.src, o.in.sequence(), {o.out, o.tgt});
  }
  return idx;
}

}  // namespace

CheckResult check_da(const TypeDAModule& m, std::size_t cap) {
  for (const auto& o : m.ops) {
    if (o.src >= m.gens.size() || o.tgt >= m.gens.size())
      return {false, "operation endpoint out of range", std::nullopt};
    const auto& s = m.gens[o.src];
    const auto& t = m.gens[o.tgt];
    if (left_idem(o.out) != s.out_idem || right_idem(o.out) != t.out_idem)
      return {false, "output idempotent mismatch at " + s.name, o.src};
    if (auto err = pattern_idempotent_error(s.in_idem, t.in_idem, o.in))
      return {false, *err + " at " + s.name, o.src};
  }
  auto idx = index_da(m);
  for (std::size_t x = 0; x < m.gens.size(); ++x) {
    for (const auto& seq : composable_sequences(m.gens[x].in_idem, cap)) {
      std::set<std::pair<Basis, std::size_t>> acc;
      auto tog = [&](Basis b, std::size_t z) {
        auto [it, ins] = acc.insert({b, z});
        if (!ins) acc.erase(it);
      };
      std::span<const Basis> s(seq);
      for (std::size_t k = 0; k <= s.size(); ++k)
        idx.each(x, s.subspan(0, k), [&](const DAOut& o1) {
          idx.each(o1.second, s.subspan(k), [&](const DAOut& o2) {
            if (auto p = multiply(o1.first, o2.first)) tog(*p, o2.second);
          });
        });
      for (std::size_t j = 0; j + 1 < s.size(); ++j) {
        auto p = multiply(s[j], s[j + 1]);
        if (!p) continue;
        std::vector<Basis> merged(s.begin(), s.begin() + j);
        merged.push_back(*p);
        merged.insert(merged.end(), s.begin() + j + 2, s.end());
        idx.each(x, merged, [&](const DAOut& o) { tog(o.first, o.second); });
      }
      if (!acc.empty()) {
        std::string in;
        for (Basis b : seq) in += std::string(in.empty() ? "" : ",") + token(b);
        return {false, "DA structure equation fails at " + m.gens[x].name + " on (" + in + ")", x};
      }
    }
  }
  return {};
}

CheckResult check_a(const TypeAModule& m, std::size_t cap) {
  for (const auto& o : m.ops) {
    if (o.src >= m.gens.size() || o.tgt >= m.gens.size())
      return {false, "operation endpoint out of range", std::nullopt};
    if (auto err = pattern_idempotent_error(m.gens[o.src].idem, m.gens[o.tgt].idem, o.in))
      return {false, *err + " at " + m.gens[o.src].name, o.src};
  }
  OpIndex<std::size_t> idx;
  for (const auto& o : m.ops) {
    if (o.in.star) idx.add_star(o.src, o.in, o.tgt);
    else idx.add_exact(o.src, o.in.sequence(), o.tgt);
  }
  for (std::size_t x = 0; x < m.gens.size(); ++x) {
    for (const auto& seq : composable_sequences(m.gens[x].idem, cap)) {
      std::set<std::size_t> acc;
      auto tog = [&](std::size_t z) {
        auto [it, ins] = acc.insert(z);
        if (!ins) acc.erase(it);
      };
      std::span<const Basis> s(seq);
      for (std::size_t k = 0; k <= s.size(); ++k)
        idx.each(x, s.subspan(0, k), [&](std::size_t y) { idx.each(y, s.subspan(k), tog); });
      for (std::size_t j = 0; j + 1 < s.size(); ++j) {
        auto p = multiply(s[j], s[j + 1]);
        if (!p) continue;
        std::vector<Basis> merged(s.begin(), s.begin() + j);
        merged.push_back(*p);
        merged.insert(merged.end(), s.begin() + j + 2, s.end());
        idx.each(x, merged, tog);
      }
      if (!acc.empty())
        return {false, "A-infinity relation fails at " + m.gens[x].name, x};
    }
  }
  return {};
}

TypeDAModule identity_da() {
  TypeDAModule m;
  m.add_gen("i0", 0, 0);
  m.add_gen("i1", 1, 1);
  for (Basis c : kChords) m.add(left_idem(c), {c}, c, right_idem(c));
  return m;
}

namespace {

void append_identity(TypeDAModule& m) {
  std::size_t off = m.gens.size();
  auto id = identity_da();
  for (const auto& g : id.gens) m.gens.push_back(g);
  for (const auto& o : id.ops) m.add(DAOp{o.src + off, o.in, o.out, o.tgt + off});
}

}  // namespace

TypeDAModule spherical_twist(const TypeDModule& e) {
  // generators e1 (x) (e, b) of E (x) E^dual, b with left idempotent idem(e)
  TypeDAModule m;
  std::map<std::tuple<std::size_t, std::size_t, Basis>, std::size_t> g;
  for (std::size_t e1 = 0; e1 < e.size(); ++e1)
    for (std::size_t f = 0; f < e.size(); ++f)
      for (Basis b : kAllBasis)
        if (left_idem(b) == e.gens[f].idem)
          g[{e1, f, b}] = m.add_gen(
              "T[" + e.gens[e1].name + ";" + e.gens[f].name + "," + token(b) + "]",
              e.gens[e1].idem, right_idem(b));
  const std::size_t id_off = m.gens.size();
  append_identity(m);
  auto out = e.out();
  for (const auto& [key, gi] : g) {
    auto [e1, f, b] = key;
    Basis own = idempotent(e.gens[e1].idem);
    for (auto [c, e1b] : out[e1]) m.add(gi, {}, c, g.at({e1b, f, b}));
    for (const auto& a : e.delta)
      if (a.tgt == f)
        if (auto p = multiply(a.coef, b)) m.add(gi, {}, own, g.at({e1, a.src, *p}));
    for (Basis c : kChords)
      if (auto p = multiply(b, c)) m.add(gi, {c}, own, g.at({e1, f, *p}));
    if (e1 == f) m.add(gi, {}, b, id_off + std::size_t(right_idem(b)));
  }
  return m;
}

TypeDAModule inverse_spherical_twist(const TypeDModule& e) {
  // generators e1 (x) (b, e) with right idempotent of b equal to idem(e)
  TypeDAModule m;
  std::map<std::tuple<std::size_t, Basis, std::size_t>, std::size_t> g;
  for (std::size_t e1 = 0; e1 < e.size(); ++e1)
    for (std::size_t f = 0; f < e.size(); ++f)
      for (Basis b : kAllBasis)
        if (right_idem(b) == e.gens[f].idem)
          g[{e1, b, f}] = m.add_gen(
              "S[" + e.gens[e1].name + ";" + token(b) + "," + e.gens[f].name + "]",
              e.gens[e1].idem, left_idem(b));
  const std::size_t id_off = m.gens.size();
  append_identity(m);
  auto out = e.out();
  for (const auto& [key, gi] : g) {
    auto [e1, b, f] = key;
    Basis own = idempotent(e.gens[e1].idem);
    for (auto [c, e1b] : out[e1]) m.add(gi, {}, c, g.at({e1b, b, f}));
    for (const auto& a : e.delta)
      if (a.tgt == f)
        for (Basis bb : kAllBasis)
          if (right_idem(bb) == e.gens[a.src].idem && multiply(bb, a.coef) == b)
            m.add(gi, {}, own, g.at({e1, bb, a.src}));
    for (Basis c : kChords)
      for (Basis bb : kAllBasis)
        if (multiply(c, bb) == b) m.add(gi, {c}, own, g.at({e1, bb, f}));
    if (e1 == f) m.add(id_off + std::size_t(left_idem(b)), {}, b, gi);
  }
  return m;
}

namespace {

using Adj = std::vector<std::vector<std::pair<Basis, std::size_t>>>;

// Enumerates label-matching paths from `start`, calling cb(end) once per path.
class PathMatcher {
 public:
  PathMatcher(const Adj& g, std::size_t cap, std::function<std::string(std::size_t)> name)
      : g_(g), cap_(cap), name_(std::move(name)) {}

  void run(std::size_t start, const InputPattern& p, const std::function<void(std::size_t)>& cb) {
    p_ = &p;
    cb_ = &cb;
    fixed(start, p.prefix, 0, 0, [&](std::size_t v, std::size_t depth) {
      if (!p.star) {
        (*cb_)(v);
        return;
      }
      std::vector<std::pair<std::size_t, bool>> path;
      star(v, depth, path);
    });
  }

 private:
  template <class Then>
  void fixed(std::size_t v, const std::vector<Basis>& seq, std::size_t i, std::size_t depth,
             Then&& then) {
    if (depth > cap_) throw Divergence("path length cap exceeded at " + name_(v));
    if (i == seq.size()) {
      then(v, depth);
      return;
    }
    for (auto [c, t] : g_[v])
      if (c == seq[i]) fixed(t, seq, i + 1, depth + 1, then);
  }

  bool has_suffix(std::size_t v) {
    bool found = false;
    fixed(v, p_->suffix, 0, 0, [&](std::size_t, std::size_t) { found = true; });
    return found;
  }

  void star(std::size_t v, std::size_t depth, std::vector<std::pair<std::size_t, bool>>& path) {
    if (depth > cap_) throw Divergence("path length cap exceeded in r12 repetition at " + name_(v));
    bool completes = false;
    fixed(v, p_->suffix, 0, depth, [&](std::size_t end, std::size_t) {
      completes = true;
      (*cb_)(end);
    });
    path.push_back({v, completes});
    for (auto [c, t] : g_[v]) {
      if (c != Basis::R12) continue;
      auto it = std::find_if(path.begin(), path.end(), [&](auto& q) { return q.first == t; });
      if (it != path.end()) {
        bool any = std::any_of(it, path.end(), [](auto& q) { return q.second; });
        if (any) {
          std::string cyc;
          for (auto jt = it; jt != path.end(); ++jt) cyc += name_(jt->first) + " -r12-> ";
          throw Divergence("unbounded r12 family along cycle " + cyc + name_(t));
        }
        continue;
      }
      star(t, depth + 1, path);
    }
    path.pop_back();
  }

  const Adj& g_;
  std::size_t cap_;
  std::function<std::string(std::size_t)> name_;
  const InputPattern* p_ = nullptr;
  const std::function<void(std::size_t)>* cb_ = nullptr;
};

// Chord arrows only. Idempotent arrows pair with the unit operation alone
// (strict unitality), so the box products add them directly.
Adj adjacency(const TypeDModule& n) {
  Adj g(n.size());
  for (const auto& a : n.delta)
    if (!is_idempotent(a.coef)) g[a.src].push_back({a.coef, a.tgt});
  return g;
}

}  // namespace

TypeDModule box_da_d(const TypeDAModule& m, const TypeDModule& n, const BoxOptions& opt) {
  TypeDModule r;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair;
  for (std::size_t x = 0; x < m.gens.size(); ++x)
    for (std::size_t y = 0; y < n.size(); ++y)
      if (m.gens[x].in_idem == n.gens[y].idem)
        pair[{x, y}] = r.add_gen(m.gens[x].name + "|" + n.gens[y].name, m.gens[x].out_idem);
  auto g = adjacency(n);
  PathMatcher pm(g, opt.path_cap, [&](std::size_t v) { return n.gens[v].name; });
  std::vector<std::vector<const DAOp*>> ops(m.gens.size());
  for (const auto& o : m.ops) ops[o.src].push_back(&o);
  for (const auto& [xy, idx] : pair) {
    auto [x, y] = xy;
    for (const DAOp* o : ops[x]) {
      std::function<void(std::size_t)> cb = [&](std::size_t end) {
        r.add(idx, o->out, pair.at({o->tgt, end}));
      };
      pm.run(y, o->in, cb);
    }
  }
  for (const auto& a : n.delta)
    if (is_idempotent(a.coef))
      for (std::size_t x = 0; x < m.gens.size(); ++x)
        if (auto it = pair.find({x, a.src}); it != pair.end())
          r.add(it->second, idempotent(m.gens[x].out_idem), pair.at({x, a.tgt}));
  return r;
}

TypeDMorphism box_da_morphism(const TypeDAModule& m, const TypeDModule& n1,
                              const TypeDModule& n2, const TypeDMorphism& h,
                              const BoxOptions& opt) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> p1, p2;
  std::size_t c1 = 0, c2 = 0;
  for (std::size_t x = 0; x < m.gens.size(); ++x) {
    for (std::size_t y = 0; y < n1.size(); ++y)
      if (m.gens[x].in_idem == n1.gens[y].idem) p1[{x, y}] = c1++;
    for (std::size_t y = 0; y < n2.size(); ++y)
      if (m.gens[x].in_idem == n2.gens[y].idem) p2[{x, y}] = c2++;
  }
  const std::size_t off = n1.size();
  Adj g(n1.size() + n2.size());
  for (const auto& a : n1.delta)
    if (!is_idempotent(a.coef)) g[a.src].push_back({a.coef, a.tgt});
  for (const auto& a : n2.delta)
    if (!is_idempotent(a.coef)) g[a.src + off].push_back({a.coef, a.tgt + off});
  for (const auto& e : h.entries)
    if (!is_idempotent(e.coef)) g[e.src].push_back({e.coef, e.tgt + off});
  PathMatcher pm(g, opt.path_cap, [&](std::size_t v) {
    return v < off ? n1.gens[v].name : n2.gens[v - off].name;
  });
  std::vector<std::vector<const DAOp*>> ops(m.gens.size());
  for (const auto& o : m.ops) ops[o.src].push_back(&o);
  TypeDMorphism r{c1, c2, {}};
  for (const auto& [xy, idx] : p1) {
    auto [x, y] = xy;
    for (const auto& e : h.entries)
      if (e.src == y && is_idempotent(e.coef))
        r.add(idx, idempotent(m.gens[x].out_idem), p2.at({x, e.tgt}));
    for (const DAOp* o : ops[x]) {
      std::function<void(std::size_t)> cb = [&](std::size_t end) {
        if (end >= off) r.add(idx, o->out, p2.at({o->tgt, end - off}));
      };
      pm.run(y, o->in, cb);
    }
  }
  return r;
}

TypeDAModule box_da_da(const TypeDAModule& m1, const TypeDAModule& m2) {
  if (m1.has_star() || m2.has_star())
    throw std::invalid_argument("box_da_da needs operations without r12 repetition");
  TypeDAModule r;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair;
  for (std::size_t x1 = 0; x1 < m1.gens.size(); ++x1)
    for (std::size_t x2 = 0; x2 < m2.gens.size(); ++x2)
      if (m1.gens[x1].in_idem == m2.gens[x2].out_idem)
        pair[{x1, x2}] = r.add_gen("(" + m1.gens[x1].name + "|" + m2.gens[x2].name + ")",
                                   m1.gens[x1].out_idem, m2.gens[x2].in_idem);
  struct Op {
    std::vector<Basis> in;
    Basis out;
    std::size_t tgt;
  };
  std::vector<std::vector<Op>> o1(m1.gens.size()), o2(m2.gens.size());
  for (const auto& o : m1.ops) o1[o.src].push_back({o.in.sequence(), o.out, o.tgt});
  for (const auto& o : m2.ops) o2[o.src].push_back({o.in.sequence(), o.out, o.tgt});
  std::size_t maxar = m1.max_arity();
  std::map<std::pair<std::size_t, std::vector<Basis>>, std::vector<std::pair<Basis, std::size_t>>>
      by_input;
  for (std::size_t x1 = 0; x1 < m1.gens.size(); ++x1)
    for (const auto& o : o1[x1]) by_input[{x1, o.in}].push_back({o.out, o.tgt});

  for (const auto& [xx, idx] : pair) {
    auto [x1, x2] = xx;
    for (const auto& o : o1[x1])
      if (o.in.empty()) r.add(idx, {}, o.out, pair.at({o.tgt, x2}));
    // chains of m2 operations whose outputs feed one m1 operation
    struct State {
      std::size_t cur;
      std::vector<Basis> in, outs;
    };
    std::vector<State> stack{{x2, {}, {}}};
    while (!stack.empty()) {
      State s = std::move(stack.back());
      stack.pop_back();
      for (const auto& o : o2[s.cur]) {
        std::vector<Basis> in = s.in;
        in.insert(in.end(), o.in.begin(), o.in.end());
        std::vector<Basis> outs = s.outs;
        outs.push_back(o.out);
        bool has_id = std::any_of(outs.begin(), outs.end(), is_idempotent);
        if (has_id) {
          if (outs.size() == 1)
            r.add(idx, in, idempotent(m1.gens[x1].out_idem), pair.at({x1, o.tgt}));
          continue;
        }
        if (auto it = by_input.find({x1, outs}); it != by_input.end())
          for (auto [c, t1] : it->second) r.add(idx, in, c, pair.at({t1, o.tgt}));
        if (outs.size() < maxar) stack.push_back({o.tgt, std::move(in), std::move(outs)});
      }
    }
  }
  return r;
}

std::size_t PairedComplex::homology_dim() const { return hfb::homology(d, d).dimension; }

PairedComplex box_a_d(const TypeAModule& a, const TypeDModule& n, const BoxOptions& opt) {
  PairedComplex pc;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair;
  for (std::size_t x = 0; x < a.gens.size(); ++x)
    for (std::size_t y = 0; y < n.size(); ++y)
      if (a.gens[x].idem == n.gens[y].idem) {
        pair[{x, y}] = pc.names.size();
        pc.names.push_back(a.gens[x].name + "|" + n.gens[y].name);
      }
  pc.d = BitMatrix(pc.names.size(), pc.names.size());
  auto g = adjacency(n);
  PathMatcher pm(g, opt.path_cap, [&](std::size_t v) { return n.gens[v].name; });
  std::vector<std::vector<const AOp*>> ops(a.gens.size());
  for (const auto& o : a.ops) ops[o.src].push_back(&o);
  for (const auto& [xy, idx] : pair) {
    auto [x, y] = xy;
    for (const AOp* o : ops[x]) {
      std::function<void(std::size_t)> cb = [&](std::size_t end) {
        pc.d.flip(pair.at({o->tgt, end}), idx);
      };
      pm.run(y, o->in, cb);
    }
  }
  for (const auto& e : n.delta)
    if (is_idempotent(e.coef))
      for (std::size_t x = 0; x < a.gens.size(); ++x)
        if (auto it = pair.find({x, e.src}); it != pair.end())
          pc.d.flip(pair.at({x, e.tgt}), it->second);
  return pc;
}

}  // namespace hfb
