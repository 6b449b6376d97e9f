#pragma once
// Printed modules and complexes, and the shipped bordered constants.

#include <string>
#include <vector>

#include "hfbord/bimodule.hpp"
#include "hfbord/cfk.hpp"
#include "hfbord/typed.hpp"

namespace hfb {

TypeDModule cfd_t0();       // x (i0), dx = r12 x
TypeDModule cfd_tinf_nu();  // x (i1), no arrows
TypeDModule e_inf();        // y (i1), dy = r23 y
TypeAModule cfa_t0();       // m_{3+i}(y, r2, r12^i, r1) = y

// The five-generator model a..e.
TypeDModule az_model();
TypeDModule trefoil_cfd();
TypeDModule figure8_cfd();

struct Figure8Maps {
  TypeDMorphism k1, k2, k3;
  // K2 as printed has d(K2)(z) = r12 g0; adding z |-> r1 g1 makes it a cycle.
  TypeDMorphism k2_cycle;
};
Figure8Maps figure8_k_maps(const TypeDModule& fig8);

CFKComplex unknot_cfk();
CFKComplex unknot_free_basepoint_cfk();
CFKComplex trefoil_cfk();   // left-handed, with the reflection involution
CFKComplex figure8_cfk();   // with the printed involution
CFKComplex l2_cfk();

// (T_E0 T_Einf)^3 from spherical twists, and its inverse from inverse twists;
// reduced by exact cancellation and renamed canonically.
TypeDAModule derive_az();
TypeDAModule derive_conj_az();

struct Builtins {
  TypeDAModule az, conj_az, identity;
  TypeAModule cfa_t0;
  TypeDModule cfd_t0, cfd_tinf_nu, e_inf;
};

// Builtins computed in memory (what the data files contain).
Builtins make_builtins();
// Files, relative to the data directory, and their serialized contents.
std::vector<std::pair<std::string, std::string>> builtin_files(const Builtins& b);
void write_builtins(const std::string& dir);

// HFBORD_DATA_DIR if set, else the source-tree data directory.
std::string default_data_dir();
// Throws FormatError on a missing file or checksum mismatch.
Builtins load_builtins(const std::string& dir);
// Reads a shipped CFK complex (unknot, unknot-free, trefoil, figure8, L2).
CFKComplex load_cfk(const std::string& dir, const std::string& name);

struct ValidationLine {
  std::string constant;
  std::string property;
  bool ok = true;
  std::string detail;
};
struct ValidationReport {
  std::vector<ValidationLine> lines;
  bool ok() const;
  std::string text() const;
};
ValidationReport validate_builtins(const Builtins& b, std::size_t da_cap = 7);

}  // namespace hfb
