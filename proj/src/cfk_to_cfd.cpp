#include "hfbord/cfk_to_cfd.hpp"

#include <algorithm>
#include <stdexcept>

namespace hfb {

namespace {

struct Simplified {
  std::vector<CFKArrow> vertical, horizontal;
  std::size_t xi0 = 0, eta0 = 0;
};

Simplified split(const CFKComplex& c) {
  Simplified s;
  std::vector<int> vdeg(c.size(), 0), hdeg(c.size(), 0);
  for (const auto& a : c.delta) {
    if (a.u == 0 && a.v == 0)
      throw std::invalid_argument("complex is not reduced: " + c.gens[a.src].name + " -> " +
                                  c.gens[a.tgt].name + " has coefficient 1");
    if (a.u > 0 && a.v > 0)
      throw std::invalid_argument("arrow " + c.gens[a.src].name + " -> " + c.gens[a.tgt].name +
                                  " mixes U and V powers");
    auto& deg = a.v > 0 ? vdeg : hdeg;
    (a.v > 0 ? s.vertical : s.horizontal).push_back(a);
    if (++deg[a.src] > 1 || ++deg[a.tgt] > 1)
      throw std::invalid_argument("basis is not vertically and horizontally simplified");
  }
  auto unpaired = [&](const std::vector<int>& deg, const char* what) {
    std::size_t n = std::count(deg.begin(), deg.end(), 0);
    if (n != 1)
      throw std::invalid_argument(std::string(what) + " homology is " + std::to_string(n) +
                                  "-dimensional, expected 1");
    return std::size_t(std::find(deg.begin(), deg.end(), 0) - deg.begin());
  };
  s.xi0 = unpaired(vdeg, "vertical");
  s.eta0 = unpaired(hdeg, "horizontal");
  return s;
}

}  // namespace

int default_tau(const CFKComplex& c) {
  if (c.size() == 0) throw std::invalid_argument("empty complex");
  auto s = split(c);
  int lo = c.gens[0].alexander, hi = lo;
  for (const auto& g : c.gens) {
    lo = std::min(lo, g.alexander);
    hi = std::max(hi, g.alexander);
  }
  int twice = 2 * c.gens[s.xi0].alexander - (lo + hi);
  if (twice % 2 != 0) throw std::invalid_argument("Alexander gradings are not symmetric about an integer");
  return -twice / 2;
}

Translation translate(const CFKComplex& c, int tau, int framing) {
  if (framing != 0) throw std::invalid_argument("only the 0-framing is supported");
  auto s = split(c);
  Translation t;
  auto& m = t.module;
  for (const auto& g : c.gens) {
    m.add_gen(g.name, 0);
    t.correspondence[g.name] = g.name;
  }
  auto chain = [&](const std::string& stem, int len) {
    std::vector<std::size_t> ids;
    for (int j = 1; j <= len; ++j) ids.push_back(m.add_gen(stem + std::to_string(j), 1));
    return ids;
  };
  for (const auto& a : s.vertical) {
    // xi -r1-> k1 <-r23- k2 ... <-r23- kl <-r123- eta
    auto k = chain("v." + c.gens[a.src].name + "." + c.gens[a.tgt].name + ".", a.v);
    m.add(a.src, Basis::R1, k.front());
    for (std::size_t j = 1; j < k.size(); ++j) m.add(k[j], Basis::R23, k[j - 1]);
    m.add(a.tgt, Basis::R123, k.back());
  }
  for (const auto& a : s.horizontal) {
    // xi -r3-> l1 -r23-> ... -r23-> ll -r2-> eta
    auto l = chain("h." + c.gens[a.src].name + "." + c.gens[a.tgt].name + ".", a.u);
    m.add(a.src, Basis::R3, l.front());
    for (std::size_t j = 1; j < l.size(); ++j) m.add(l[j - 1], Basis::R23, l[j]);
    m.add(l.back(), Basis::R2, a.tgt);
  }
  const std::size_t xi = s.xi0, eta = s.eta0;
  if (tau == 0) {
    m.add(xi, Basis::R12, eta);
  } else if (tau < 0) {
    auto k = chain("u.", -2 * tau);
    m.add(xi, Basis::R1, k.front());
    for (std::size_t j = 1; j < k.size(); ++j) m.add(k[j], Basis::R23, k[j - 1]);
    m.add(eta, Basis::R3, k.back());
  } else {
    auto k = chain("u.", 2 * tau);
    m.add(xi, Basis::R123, k.front());
    for (std::size_t j = 1; j < k.size(); ++j) m.add(k[j - 1], Basis::R23, k[j]);
    m.add(k.back(), Basis::R2, eta);
  }
  return t;
}

}  // namespace hfb
