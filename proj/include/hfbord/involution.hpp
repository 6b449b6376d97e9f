#pragma once
// The morphism f into AZ box CFD(Tinf,nu), the hat-iota action on the Mor
// pairing, candidate involutions and the bordered local-triviality check.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hfbord/bimodule.hpp"
#include "hfbord/f2.hpp"
#include "hfbord/typed.hpp"

namespace hfb {

// Basis-free invariants of an automorphism of a finite F2 vector space.
struct ActionInvariants {
  std::size_t dim = 0;
  std::vector<int> min_poly;         // coefficients, constant term first; monic
  std::vector<std::size_t> rank_profile;  // rank (E+1)^k, k = 1.. until stable
  bool operator==(const ActionInvariants&) const = default;
};

ActionInvariants action_invariants(const BitMatrix& e);
std::vector<int> minimal_polynomial(const BitMatrix& e);
std::string poly_string(const std::vector<int>& p);  // "(t+1)^3" when a power of t+1
std::optional<BitMatrix> inverse(const BitMatrix& e);
std::string invariants_string(const ActionInvariants& inv);

struct ModelOptions {
  // Reverse the generator order of AZ box CFD(Tinf,nu) before cancelling;
  // gives an independent run of the reduction.
  bool reverse_order = false;
  BoxOptions box;
};

struct ModelAndF {
  TypeDModule model;        // the five-generator model a..e
  TypeDModule product;      // AZ box CFD(Tinf,nu)
  ReductionData transport;  // reduction of product
  TypeDMorphism to_reduced; // model -> transport.reduced (isomorphism)
  TypeDMorphism f;          // CFD(Tinf,nu) -> product, x |-> a
};
// Throws std::logic_error when the reduced product does not match the model.
ModelAndF model_and_f(const TypeDAModule& az, const ModelOptions& opt = {});

struct HatIotaReport {
  BitMatrix e;  // induced map on H(Mor(CFD(Tinf,nu), cfd)), columns = images
  ActionInvariants inv;
  bool invertible = true;
  bool ambiguous = true;  // E != E^{-1}: the action is iota or its inverse
  std::string text() const;
};

// h |-> iota o (id_AZ box h) o f on Mor(CFD(Tinf,nu), cfd). iota: AZ box cfd -> cfd.
// Throws std::invalid_argument unless iota is an equivalence.
HatIotaReport hat_iota(const TypeDAModule& az, const ModelAndF& mf, const TypeDModule& cfd,
                       const TypeDMorphism& iota, bool check_equivalence = true);
// Same map without the equivalence precondition (used for linear corrections).
BitMatrix hat_iota_matrix(const TypeDAModule& az, const ModelAndF& mf, const TypeDModule& cfd,
                          const TypeDMorphism& iota);

// Homology classes of Mor(n1, n2), as coordinate vectors, whose
// representatives are homotopy equivalences; enumerated in increasing order.
// Throws CapExceeded when 2^dim exceeds cap.
std::vector<BitVec> invertible_classes(const TypeDModule& n1, const TypeDModule& n2,
                                       std::size_t cap = std::size_t(1) << 20);
// Sum of homology representatives selected by coords.
TypeDMorphism class_representative(const MorComplex& m, const BitVec& coords);

// An equivalence AZ box cfd -> cfd: by isomorphism of the reduced product,
// otherwise by enumerating Mor classes.
std::optional<TypeDMorphism> find_equivalence(const TypeDAModule& az, const TypeDModule& cfd,
                                              std::size_t cap = std::size_t(1) << 20);

struct NamedMap {
  std::string name;
  TypeDMorphism map;  // cfd -> cfd
};

struct SolveCandidate {
  BitVec correction;     // class of g in End homology coordinates
  std::string expression;  // in the named basis, when it lies in its span
  HatIotaReport report;
  TypeDMorphism iota;    // (id + g) o F
};

struct SolveResult {
  TypeDMorphism base;           // F
  HatIotaReport base_report;
  std::size_t end_dim = 0;
  std::size_t examined = 0;
  std::vector<SolveCandidate> candidates;  // every match, in enumeration order
  std::string text() const;
};

// Corrections g range over End(cfd) homology classes (or over the span of
// `basis` when it is non-empty); a candidate (id + g) o F matches when its
// invariants equal `known` or those of its inverse.
SolveResult solve_involution(const TypeDAModule& az, const ModelAndF& mf, const TypeDModule& cfd,
                             const ActionInvariants& known, const TypeDMorphism& base,
                             const std::vector<NamedMap>& basis = {},
                             std::size_t cap = std::size_t(1) << 20);

struct MainThm1Report {
  bool square = false;   // g o iota1 + iota2 o (id box g) nullhomotopic
  bool pairing = false;  // proxy: h |-> g o h is an isomorphism on H(Mor(CFD(Tinf,nu), -))
  bool ok() const { return square && pairing; }
  std::string text() const;
};
// Throws std::invalid_argument on non-cycle inputs.
MainThm1Report check_mainthm1(const TypeDAModule& az, const TypeDModule& cfd1,
                              const TypeDModule& cfd2, const TypeDMorphism& g,
                              const TypeDMorphism& iota1, const TypeDMorphism& iota2);

}  // namespace hfb
