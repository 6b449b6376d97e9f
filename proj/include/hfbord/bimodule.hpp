#pragma once
// Type-A modules, type-DA bimodules and box tensor products.

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "hfbord/algebra.hpp"
#include "hfbord/typed.hpp"

namespace hfb {

// prefix, then any number (>= 0) of r12 when star is set, then suffix.
struct InputPattern {
  std::vector<Basis> prefix;
  bool star = false;
  std::vector<Basis> suffix;

  static InputPattern exact(std::vector<Basis> seq) { return {std::move(seq), false, {}}; }
  bool matches(std::span<const Basis> seq) const;
  std::size_t min_length() const { return prefix.size() + suffix.size(); }
  std::vector<Basis> sequence() const;  // only when !star
  // All concrete sequences of length <= max_len.
  std::vector<std::vector<Basis>> expand(std::size_t max_len) const;
  auto key() const { return std::tie(prefix, star, suffix); }
  bool operator<(const InputPattern& o) const { return key() < o.key(); }
  bool operator==(const InputPattern& o) const { return key() == o.key(); }
};

struct Divergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AGen {
  std::string name;
  int idem = 0;
};

// m_{1+k}(src, a_1..a_k) = tgt for every a matching the pattern.
struct AOp {
  std::size_t src = 0;
  InputPattern in;
  std::size_t tgt = 0;
  auto key() const { return std::tie(src, in, tgt); }
  bool operator<(const AOp& o) const { return key() < o.key(); }
};

class TypeAModule {
 public:
  std::vector<AGen> gens;
  std::set<AOp> ops;
  std::size_t add_gen(const std::string& name, int idem);
  std::size_t index(const std::string& name) const;
  void add(const AOp& op);  // F2 toggle
};

struct DAGen {
  std::string name;
  int out_idem = 0;  // type-D side
  int in_idem = 0;   // A-infinity side
};

// delta^1_{1+j}(src, a_1..a_j) contains out (x) tgt.
struct DAOp {
  std::size_t src = 0;
  InputPattern in;
  Basis out = Basis::I0;
  std::size_t tgt = 0;
  auto key() const { return std::tie(src, in, out, tgt); }
  bool operator<(const DAOp& o) const { return key() < o.key(); }
  bool operator==(const DAOp& o) const { return key() == o.key(); }
};

class TypeDAModule {
 public:
  std::vector<DAGen> gens;
  std::set<DAOp> ops;
  std::size_t add_gen(const std::string& name, int out_idem, int in_idem);
  std::size_t index(const std::string& name) const;
  std::optional<std::size_t> find(const std::string& name) const;
  void add(const DAOp& op);  // F2 toggle
  void add(std::size_t src, std::vector<Basis> inputs, Basis out, std::size_t tgt) {
    add(DAOp{src, InputPattern::exact(std::move(inputs)), out, tgt});
  }
  bool has_star() const;
  std::size_t max_arity() const;  // max input length of concrete ops
};

// Validity checks: idempotent compatibility of every op, then the structure
// relations on every composable input sequence of length <= cap.
CheckResult check_da(const TypeDAModule& m, std::size_t cap = 8);
CheckResult check_a(const TypeAModule& m, std::size_t cap = 8);

TypeDAModule identity_da();

// Spherical twist T_E = Cone(E (x) E^dual -> I) and its inverse
// Cone(I -> E (x) E^dual), for a type-D structure E with finite data.
TypeDAModule spherical_twist(const TypeDModule& e);
TypeDAModule inverse_spherical_twist(const TypeDModule& e);

struct BoxOptions {
  std::size_t path_cap = 64;
};

TypeDModule box_da_d(const TypeDAModule& m, const TypeDModule& n, const BoxOptions& opt = {});
// id_M box h : M box N1 -> M box N2 (generator indices as in box_da_d).
TypeDMorphism box_da_morphism(const TypeDAModule& m, const TypeDModule& n1,
                              const TypeDModule& n2, const TypeDMorphism& h,
                              const BoxOptions& opt = {});
// m1 is the outer factor: (m1 box m2) box N = m1 box (m2 box N).
// Requires star-free operations.
TypeDAModule box_da_da(const TypeDAModule& m1, const TypeDAModule& m2);

struct PairedComplex {
  std::vector<std::string> names;
  BitMatrix d;
  std::size_t homology_dim() const;
};
PairedComplex box_a_d(const TypeAModule& a, const TypeDModule& n, const BoxOptions& opt = {});

struct ReduceDAOptions {
  // Sum zigzag series through input-bearing idempotent operations, keeping
  // every operation with at most `cap` inputs (exact up to that length).
  bool allow_truncation = false;
  std::size_t cap = 8;
};
struct ReduceDAResult {
  TypeDAModule reduced;
  bool complete = true;   // no idempotent cancellable operation left
  bool truncated = false; // some series was cut at the cap
};
ReduceDAResult reduce_da(const TypeDAModule& m, const ReduceDAOptions& opt = {});

// DA isomorphism X -> Y: f_1 an idempotent-preserving generator bijection,
// higher f solved linearly, verified on inputs up to `cap`.
bool da_isomorphic(const TypeDAModule& x, const TypeDAModule& y, std::size_t cap);

// Renames generators to prefix0, prefix1, ... in (out, in, name) order.
TypeDAModule rename_canonical(const TypeDAModule& m, const std::string& prefix);

// Sequences of chords a_1..a_k (0 <= k <= max_len, the empty one first)
// composable from idempotent `start`.
std::vector<std::vector<Basis>> composable_sequences(int start, std::size_t max_len);

}  // namespace hfb
