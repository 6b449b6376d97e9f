#pragma once
// Type-D structures over the torus algebra, their morphism complexes,
// cancellation and isomorphism search.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "hfbord/algebra.hpp"
#include "hfbord/f2.hpp"

namespace hfb {

struct Grading {
  int maslov = 0;
  int alexander = 0;
  bool operator==(const Grading&) const = default;
};

struct DGen {
  std::string name;
  int idem = 0;
  std::optional<Grading> grading;
};

// One basis term of a coefficient; coefficients are sums of these.
struct Arrow {
  std::size_t src = 0;
  Basis coef = Basis::I0;
  std::size_t tgt = 0;
  auto key() const { return std::tuple(src, coef, tgt); }
  bool operator<(const Arrow& o) const { return key() < o.key(); }
  bool operator==(const Arrow& o) const { return key() == o.key(); }
};

// Adds a term over F2 (cancels an equal existing term).
void toggle(std::set<Arrow>& s, const Arrow& a);

class TypeDModule {
 public:
  std::vector<DGen> gens;
  std::set<Arrow> delta;

  std::size_t size() const { return gens.size(); }
  std::size_t add_gen(const std::string& name, int idem,
                      std::optional<Grading> g = std::nullopt);
  std::size_t index(const std::string& name) const;  // throws std::out_of_range
  std::optional<std::size_t> find(const std::string& name) const;
  void add(std::size_t src, Basis coef, std::size_t tgt) { toggle(delta, {src, coef, tgt}); }
  void add(const std::string& src, Basis coef, const std::string& tgt) {
    add(index(src), coef, index(tgt));
  }
  // outgoing arrows per generator
  std::vector<std::vector<std::pair<Basis, std::size_t>>> out() const;
};

// Entries (x, b, y) mean x |-> b (x) y.
struct TypeDMorphism {
  std::size_t src_size = 0, tgt_size = 0;
  std::set<Arrow> entries;

  void add(std::size_t x, Basis b, std::size_t y) { toggle(entries, {x, b, y}); }
  bool is_zero() const { return entries.empty(); }
  TypeDMorphism& operator+=(const TypeDMorphism& o);
  bool operator==(const TypeDMorphism& o) const {
    return src_size == o.src_size && tgt_size == o.tgt_size && entries == o.entries;
  }
};

TypeDMorphism identity_morphism(const TypeDModule& n);
TypeDMorphism zero_morphism(const TypeDModule& a, const TypeDModule& b);
// The differential viewed as a morphism N -> N.
TypeDMorphism delta_morphism(const TypeDModule& n);

struct CheckResult {
  bool ok = true;
  std::string message;
  std::optional<std::size_t> generator;
};

CheckResult check_structure(const TypeDModule& n);

// Idempotent inference from single-basis arrows; hint gives the idempotent of
// an unconstrained component by generator name. Throws std::domain_error
// "no valid idempotent assignment" on conflict and std::invalid_argument when
// a component needs a hint.
struct NamedArrow {
  std::string src;
  Basis coef;
  std::string tgt;
};
std::vector<int> infer_idempotents(const std::vector<std::string>& names,
                                   const std::vector<NamedArrow>& arrows,
                                   const std::map<std::string, int>& hints = {});

struct ReductionData {
  TypeDModule reduced;
  TypeDMorphism include;   // reduced -> original
  TypeDMorphism project;   // original -> reduced
  TypeDMorphism homotopy;  // original -> original
};

ReductionData reduce(const TypeDModule& n);

// (g o h)(x): apply h then g.
TypeDMorphism compose(const TypeDMorphism& g, const TypeDMorphism& h);

class MorComplex {
 public:
  MorComplex(const TypeDModule& n1, const TypeDModule& n2);

  struct Elem {
    std::size_t x;
    Basis b;
    std::size_t y;
  };
  const std::vector<Elem>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }
  const BitMatrix& d() const { return d_; }
  BitVec to_vector(const TypeDMorphism& h) const;  // throws on incompatible entries
  TypeDMorphism from_vector(const BitVec& v) const;
  TypeDMorphism differential(const TypeDMorphism& h) const;
  const Homology& homology() const;
  // Homology coordinates of a cycle.
  BitVec class_of(const TypeDMorphism& h) const;

 private:
  std::size_t n1_, n2_;
  std::vector<Elem> basis_;
  std::map<std::tuple<std::size_t, Basis, std::size_t>, std::size_t> index_;
  BitMatrix d_;
  mutable std::optional<Homology> hom_;
  mutable std::optional<HomologyCoordinates> coords_;
};

// Mor differential d(h) = delta_2 o h + h o delta_1.
TypeDMorphism mor_differential(const TypeDModule& n1, const TypeDModule& n2,
                               const TypeDMorphism& h);
bool is_cycle(const TypeDModule& n1, const TypeDModule& n2, const TypeDMorphism& h);

// Witness H with d(H) = h, or nullopt. Throws std::domain_error("not a cycle").
std::optional<TypeDMorphism> nullhomotopy(const TypeDModule& n1, const TypeDModule& n2,
                                          const TypeDMorphism& h);

TypeDModule cone(const TypeDModule& n1, const TypeDModule& n2, const TypeDMorphism& h);
bool is_equivalence(const TypeDModule& n1, const TypeDModule& n2, const TypeDMorphism& h);
bool is_bounded(const TypeDModule& n);

struct IsoOptions {
  std::size_t max_generators = 12;
  std::size_t enumeration_cap = std::size_t(1) << 20;
};
// An isomorphism n1 -> n2: a Mor cycle whose idempotent part is invertible.
// Throws CapExceeded when the generator cap is exceeded.
std::optional<TypeDMorphism> iso_search(const TypeDModule& n1, const TypeDModule& n2,
                                        const IsoOptions& opt = {});

// Rename generators in name order, returning a module with sorted generators.
TypeDModule canonical(const TypeDModule& n);

}  // namespace hfb
