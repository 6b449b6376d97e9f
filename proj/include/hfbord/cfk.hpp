#pragma once
// Knot Floer complexes over F2[U,V] and R = F2[U,V]/(UV), basepoint actions,
// skew-involutions, connected sums and local maps.

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "hfbord/f2.hpp"

namespace hfb {

enum class Ring { UV, R };

struct CFKGen {
  std::string name;
  int maslov = 0;
  int alexander = 0;
};

// src |-> U^u V^v tgt
struct CFKArrow {
  std::size_t src = 0;
  int u = 0, v = 0;
  std::size_t tgt = 0;
  auto key() const { return std::tuple(src, u, v, tgt); }
  bool operator<(const CFKArrow& o) const { return key() < o.key(); }
  bool operator==(const CFKArrow& o) const { return key() == o.key(); }
};

// An F2[U,V]-linear (or skew-linear, for involutions) map given on generators.
using CFKMap = std::set<CFKArrow>;
void toggle(CFKMap& m, const CFKArrow& a);

class CFKComplex {
 public:
  Ring ring = Ring::UV;
  std::vector<CFKGen> gens;
  CFKMap delta;
  std::optional<CFKMap> iota;

  std::size_t size() const { return gens.size(); }
  std::size_t add_gen(const std::string& name, int maslov, int alexander);
  std::size_t index(const std::string& name) const;
  std::optional<std::size_t> find(const std::string& name) const;
  void add(const std::string& src, int u, int v, const std::string& tgt);
  void add_iota(const std::string& src, int u, int v, const std::string& tgt);
};

// g o h for linear maps (h first). Over R products with both powers vanish.
CFKMap compose(Ring r, const CFKMap& g, const CFKMap& h);
// s o h where s is skew-linear (h first): powers of h are swapped under s.
CFKMap compose_skew(Ring r, const CFKMap& s, const CFKMap& h);
CFKMap identity_map(std::size_t n);
CFKMap operator+(CFKMap a, const CFKMap& b);

struct CFKCheck {
  bool ok = true;
  std::string message;
};

CFKCheck check_cfk(const CFKComplex& c);

struct PhiPsi {
  CFKMap phi, psi;
};
// Formal derivatives of the differential in U and V (coefficients mod 2).
PhiPsi phi_psi(const CFKComplex& c);

struct InvolutionCheck {
  bool ok = true;
  bool skew = true, chain = true, square = true;
  std::string message;
  std::optional<CFKMap> homotopy;  // H with dH + Hd = iota^2 + 1 + Phi Psi
  std::optional<double> center;    // Alexander symmetry centre s
};
// iota is read from c.iota unless given.
InvolutionCheck check_involution(const CFKComplex& c, const std::optional<CFKMap>& iota = {});

// Solves dH + Hd = target for an F2[U,V]-linear H of bidegree (+1, 0).
std::optional<CFKMap> cfk_nullhomotopy(const CFKComplex& c, const CFKMap& target);

struct HatData {
  std::vector<std::string> names;
  BitMatrix d;              // U = V = 0
  Homology homology;
  std::vector<std::pair<int, int>> class_bidegrees;  // of each representative, when homogeneous
  std::optional<BitMatrix> action;  // induced map on homology in the representative basis
};
HatData hat_truncate(const CFKComplex& c, const std::optional<CFKMap>& iota = {});

// The same data read over R (arrows carrying both U and V are dropped).
CFKComplex over_r(const CFKComplex& c);
CFKComplex connected_sum(const CFKComplex& a, const CFKComplex& b);
CFKComplex dual(const CFKComplex& c);
CFKComplex trivial_complex();

enum class LocalDirection { ToTrivial, FromTrivial };

struct LocalSearchResult {
  bool found = false;
  std::vector<std::string> trace;  // one line per examined candidate
  std::optional<std::string> map;  // description of the local map found
};
// Throws CapExceeded when the candidate space exceeds enum_cap.
LocalSearchResult local_map_search(const CFKComplex& c, LocalDirection dir, int uv_cap,
                                   std::size_t enum_cap = std::size_t(1) << 20);

std::string describe_element(const CFKComplex& c, const CFKMap& m, std::size_t src);

}  // namespace hfb
