#include "hfbord/builtins.hpp"

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "hfbord/io.hpp"

namespace hfb {

TypeDModule cfd_t0() {
  TypeDModule n;
  n.add_gen("x", 0);
  n.add("x", Basis::R12, "x");
  return n;
}

TypeDModule cfd_tinf_nu() {
  TypeDModule n;
  n.add_gen("x", 1);
  return n;
}

TypeDModule e_inf() {
  TypeDModule n;
  n.add_gen("y", 1);
  n.add("y", Basis::R23, "y");
  return n;
}

TypeAModule cfa_t0() {
  TypeAModule m;
  m.add_gen("y", 1);
  m.add(AOp{0, InputPattern{{Basis::R2}, true, {Basis::R1}}, 0});
  return m;
}

TypeDModule az_model() {
  TypeDModule n;
  n.add_gen("a", 1);
  n.add_gen("b", 0);
  n.add_gen("c", 1);
  n.add_gen("d", 0);
  n.add_gen("e", 1);
  n.add("b", Basis::R1, "a");
  n.add("b", Basis::R3, "c");
  n.add("c", Basis::R2, "d");
  n.add("d", Basis::R1, "e");
  return n;
}

TypeDModule trefoil_cfd() {
  TypeDModule n;
  for (const char* g : {"e0", "f0", "g0"}) n.add_gen(g, 0);
  for (const char* g : {"f1", "g1", "h1", "k1"}) n.add_gen(g, 1);
  n.add("e0", Basis::R3, "f1");
  n.add("f1", Basis::R2, "f0");
  n.add("f0", Basis::R1, "k1");
  n.add("e0", Basis::R1, "g1");
  n.add("g0", Basis::R123, "g1");
  n.add("g0", Basis::R3, "h1");
  n.add("h1", Basis::R23, "k1");
  return n;
}

TypeDModule figure8_cfd() {
  TypeDModule n;
  for (const char* g : {"e0", "f0", "g0", "h0"}) n.add_gen(g, 0);
  for (const char* g : {"e1", "f1", "g1", "h1"}) n.add_gen(g, 1);
  n.add_gen("z", 0);
  n.add("e0", Basis::R3, "e1");
  n.add("e1", Basis::R2, "f0");
  n.add("e0", Basis::R1, "h1");
  n.add("f0", Basis::R1, "f1");
  n.add("g0", Basis::R123, "f1");
  n.add("h0", Basis::R123, "h1");
  n.add("h0", Basis::R3, "g1");
  n.add("g1", Basis::R2, "g0");
  n.add("z", Basis::R12, "z");
  return n;
}

Figure8Maps figure8_k_maps(const TypeDModule& n) {
  const TypeDMorphism zero{n.size(), n.size(), {}};
  Figure8Maps k{zero, zero, zero, zero};
  auto z = n.index("z");
  k.k1.add(n.index("e0"), Basis::I0, z);
  k.k1.add(n.index("h1"), Basis::R2, z);
  k.k2.add(z, Basis::I0, n.index("g0"));
  k.k2.add(z, Basis::R3, n.index("f1"));
  k.k3.add(z, Basis::I0, z);
  k.k2_cycle = k.k2;
  k.k2_cycle.add(z, Basis::R1, n.index("g1"));
  return k;
}

CFKComplex unknot_cfk() {
  CFKComplex c;
  c.add_gen("x", 0, 0);
  c.add_iota("x", 0, 0, "x");
  return c;
}

CFKComplex unknot_free_basepoint_cfk() {
  CFKComplex c;
  c.add_gen("x+", 0, 0);
  c.add_gen("x-", -1, 0);
  c.add("x-", 1, 1, "x+");
  return c;
}

CFKComplex trefoil_cfk() {
  CFKComplex c;
  c.add_gen("a", 0, 1);
  c.add_gen("b", 1, 2);
  c.add_gen("c", -1, 0);
  c.add("a", 1, 0, "b");
  c.add("a", 0, 1, "c");
  c.add_iota("a", 0, 0, "a");
  c.add_iota("b", 0, 0, "c");
  c.add_iota("c", 0, 0, "b");
  return c;
}

CFKComplex figure8_cfk() {
  CFKComplex c;
  c.add_gen("a", 0, 0);
  c.add_gen("b", 1, 1);
  c.add_gen("c", -1, -1);
  c.add_gen("d", 0, 0);
  c.add_gen("x", 0, 0);
  c.add("a", 1, 0, "b");
  c.add("a", 0, 1, "c");
  c.add("b", 0, 1, "d");
  c.add("c", 1, 0, "d");
  c.add_iota("a", 0, 0, "a");
  c.add_iota("a", 0, 0, "x");
  c.add_iota("b", 0, 0, "c");
  c.add_iota("c", 0, 0, "b");
  c.add_iota("d", 0, 0, "d");
  c.add_iota("x", 0, 0, "x");
  c.add_iota("x", 0, 0, "d");
  return c;
}

CFKComplex l2_cfk() {
  CFKComplex c;
  c.add_gen("xc", 1, 1);
  c.add_gen("xd", 0, 0);
  c.add_gen("yc", 0, 0);
  c.add_gen("yd", -1, -1);
  c.add("xd", 1, 0, "xc");
  c.add("xd", 0, 1, "yd");
  c.add("yc", 1, 0, "xc");
  c.add("yc", 0, 1, "yd");
  c.add("xc", 0, 1, "xd");
  c.add("xc", 0, 1, "yc");
  c.add("yd", 1, 0, "xd");
  c.add("yd", 1, 0, "yc");
  return c;
}

namespace {

// Boxes left to right starting from the identity, reducing after each step.
TypeDAModule twist_word(const std::string& word) {
  const auto a = spherical_twist(cfd_t0()), b = spherical_twist(e_inf());
  const auto ai = inverse_spherical_twist(cfd_t0()), bi = inverse_spherical_twist(e_inf());
  TypeDAModule cur = identity_da();
  for (char ch : word) {
    const TypeDAModule& t = ch == 'a' ? a : ch == 'b' ? b : ch == 'A' ? ai : bi;
    auto r = reduce_da(box_da_da(cur, t));
    if (!r.complete) throw std::logic_error("twist word did not reduce exactly");
    cur = std::move(r.reduced);
  }
  return cur;
}

}  // namespace

TypeDAModule derive_az() { return rename_canonical(twist_word("ababab"), "w"); }
TypeDAModule derive_conj_az() { return rename_canonical(twist_word("BABABA"), "v"); }

Builtins make_builtins() {
  return {derive_az(), derive_conj_az(), identity_da(), cfa_t0(), cfd_t0(), cfd_tinf_nu(), e_inf()};
}

std::vector<std::pair<std::string, std::string>> builtin_files(const Builtins& b) {
  return {
      {"az.json", dump(to_json(b.az))},
      {"conj_az.json", dump(to_json(b.conj_az))},
      {"identity.json", dump(to_json(b.identity))},
      {"cfa_t0.json", dump(to_json(b.cfa_t0))},
      {"cfd_t0.json", dump(to_json(b.cfd_t0))},
      {"cfd_tinf_nu.json", dump(to_json(b.cfd_tinf_nu))},
      {"e_inf.json", dump(to_json(b.e_inf))},
      {"cfk/unknot.json", dump(to_json(unknot_cfk()))},
      {"cfk/unknot-free.json", dump(to_json(unknot_free_basepoint_cfk()))},
      {"cfk/trefoil.json", dump(to_json(trefoil_cfk()))},
      {"cfk/figure8.json", dump(to_json(figure8_cfk()))},
      {"cfk/L2.json", dump(to_json(l2_cfk()))},
      {"cfd/trefoil.json", dump(to_json(trefoil_cfd()))},
      {"cfd/figure8.json", dump(to_json(figure8_cfd()))},
      {"cfd/model.json", dump(to_json(az_model()))},
  };
}

void write_builtins(const std::string& dir) {
  namespace fs = std::filesystem;
  json manifest = json::object();
  for (const auto& [name, text] : builtin_files(make_builtins())) {
    fs::path p = fs::path(dir) / name;
    fs::create_directories(p.parent_path());
    write_text_file(p.string(), text);
    manifest[name] = sha256_hex(text);
  }
  write_text_file((fs::path(dir) / "MANIFEST.json").string(),
                  dump(json{{"algorithm", "sha256"}, {"files", manifest}}));
}

std::string default_data_dir() {
  if (const char* e = std::getenv("HFBORD_DATA_DIR"); e && *e) return e;
  return HFBORD_DEFAULT_DATA_DIR;
}

namespace {

std::string verified(const std::string& dir, const std::string& name) {
  namespace fs = std::filesystem;
  auto manifest = read_json_file((fs::path(dir) / "MANIFEST.json").string());
  if (!manifest.contains("files") || !manifest["files"].contains(name))
    throw FormatError(name + " is not listed in the data manifest");
  auto text = read_text_file((fs::path(dir) / name).string());
  if (sha256_hex(text) != manifest["files"][name].get<std::string>())
    throw FormatError(name + ": checksum mismatch against MANIFEST.json");
  return text;
}

json parse(const std::string& name, const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(name + ": " + e.what());
  }
}

}  // namespace

Builtins load_builtins(const std::string& dir) {
  auto get = [&](const std::string& name) { return parse(name, verified(dir, name)); };
  Builtins b;
  b.az = typeda_from_json(get("az.json"));
  b.conj_az = typeda_from_json(get("conj_az.json"));
  b.identity = typeda_from_json(get("identity.json"));
  b.cfa_t0 = typea_from_json(get("cfa_t0.json"));
  b.cfd_t0 = typed_from_json(get("cfd_t0.json"));
  b.cfd_tinf_nu = typed_from_json(get("cfd_tinf_nu.json"));
  b.e_inf = typed_from_json(get("e_inf.json"));
  return b;
}

CFKComplex load_cfk(const std::string& dir, const std::string& name) {
  auto file = "cfk/" + name + ".json";
  return cfk_from_json(parse(file, verified(dir, file)));
}

bool ValidationReport::ok() const {
  for (const auto& l : lines)
    if (!l.ok) return false;
  return true;
}

std::string ValidationReport::text() const {
  std::ostringstream s;
  for (const auto& l : lines)
    s << (l.ok ? "ok   " : "FAIL ") << l.constant << ": " << l.property
      << (l.detail.empty() ? "" : " (" + l.detail + ")") << "\n";
  s << (ok() ? "7 constants, all checks pass" : "builtin validation failed") << "\n";
  return s.str();
}

ValidationReport validate_builtins(const Builtins& b, std::size_t cap) {
  ValidationReport r;
  auto add = [&](std::string c, std::string p, bool ok, std::string d = {}) {
    r.lines.push_back({std::move(c), std::move(p), ok, std::move(d)});
  };
  auto da = [&](const std::string& name, const TypeDAModule& m) {
    auto c = check_da(m, cap);
    add(name, "DA structure equation up to " + std::to_string(cap) + " inputs", c.ok, c.message);
  };
  auto d = [&](const std::string& name, const TypeDModule& m) {
    auto c = check_structure(m);
    add(name, "type-D structure equation", c.ok, c.message);
  };
  da("AZ", b.az);
  da("conjAZ", b.conj_az);
  da("identity", b.identity);
  {
    auto c = check_a(b.cfa_t0, cap);
    add("CFA(T0)", "A-infinity relations up to " + std::to_string(cap) + " inputs", c.ok, c.message);
  }
  d("CFD(T0)", b.cfd_t0);
  d("CFD(Tinf,nu)", b.cfd_tinf_nu);
  d("E_inf", b.e_inf);

  add("AZ", "equals the reduced twist word (T_E0 T_Einf)^3",
      to_json(b.az) == to_json(derive_az()));
  add("conjAZ", "equals the reduced inverse twist word", to_json(b.conj_az) == to_json(derive_conj_az()));
  add("identity", "equals the identity bimodule", to_json(b.identity) == to_json(identity_da()));
  {
    bool ok = false;
    std::string detail;
    try {
      auto red = reduce_da(box_da_da(b.conj_az, b.az), {true, cap});
      ok = da_isomorphic(red.reduced, b.identity, cap);
      detail = std::to_string(red.reduced.gens.size()) + " generators after reduction";
    } catch (const std::exception& e) {
      detail = e.what();
    }
    add("conjAZ", "conjAZ box AZ is isomorphic to the identity (inputs up to " + std::to_string(cap) + ")",
        ok, detail);
  }
  {
    bool ok = false;
    std::string detail;
    try {
      auto red = reduce(box_da_d(b.az, b.cfd_tinf_nu)).reduced;
      ok = iso_search(red, az_model()).has_value();
      detail = std::to_string(red.size()) + " generators after reduction";
    } catch (const std::exception& e) {
      detail = e.what();
    }
    add("AZ", "reduce(AZ box CFD(Tinf,nu)) is isomorphic to the five-generator model", ok, detail);
  }
  {
    MorComplex m(b.cfd_tinf_nu, b.cfd_t0);
    auto dim = m.homology().dimension;
    add("CFD(Tinf,nu)", "Mor(CFD(Tinf,nu), CFD(T0)) has homology dimension 1", dim == 1,
        "dimension " + std::to_string(dim));
  }
  {
    MorComplex m(b.cfd_t0, b.cfd_t0);
    auto dim = m.homology().dimension;
    add("CFD(T0)", "Mor(CFD(T0), CFD(T0)) has homology dimension 2", dim == 2,
        "dimension " + std::to_string(dim));
  }
  return r;
}

}  // namespace hfb
