#include "hfbord/io.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace hfb {

namespace {

std::string idem_token(int i) { return i == 0 ? "i0" : "i1"; }

int parse_idem(const json& j) {
  auto s = j.get<std::string>();
  if (s == "i0") return 0;
  if (s == "i1") return 1;
  throw FormatError("bad idempotent " + s);
}

Basis parse_token(const json& j) {
  auto s = j.get<std::string>();
  auto b = parse_basis(s);
  if (!b) throw FormatError("unknown algebra token " + s);
  return *b;
}

void expect_kind(const json& j, const std::string& kind) {
  if (!j.is_object() || !j.contains("kind") || j["kind"] != kind)
    throw FormatError("expected a document of kind " + kind);
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const FormatError&) {
    throw;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  } catch (const std::out_of_range& e) {
    throw FormatError(e.what());
  }
}

// Generator indices in name order.
template <class G>
std::vector<std::size_t> name_order(const std::vector<G>& gens) {
  std::vector<std::size_t> o(gens.size());
  for (std::size_t i = 0; i < o.size(); ++i) o[i] = i;
  std::sort(o.begin(), o.end(), [&](auto a, auto b) { return gens[a].name < gens[b].name; });
  return o;
}

template <class G>
void check_unique_names(const std::vector<G>& gens) {
  auto o = name_order(gens);
  for (std::size_t i = 1; i < o.size(); ++i)
    if (gens[o[i]].name == gens[o[i - 1]].name)
      throw FormatError("duplicate generator " + gens[o[i]].name);
}

json tokens(const std::vector<Basis>& s) {
  json a = json::array();
  for (Basis b : s) a.push_back(token(b));
  return a;
}

json pattern_json(const InputPattern& p) {
  return json{{"prefix", tokens(p.prefix)}, {"star", p.star}, {"suffix", tokens(p.suffix)}};
}

InputPattern parse_pattern(const json& j) {
  InputPattern p;
  for (const auto& t : j.at("prefix")) p.prefix.push_back(parse_token(t));
  p.star = j.value("star", false);
  for (const auto& t : j.value("suffix", json::array())) p.suffix.push_back(parse_token(t));
  for (Basis b : p.prefix)
    if (is_idempotent(b)) throw FormatError("idempotent used as an operation input");
  for (Basis b : p.suffix)
    if (is_idempotent(b)) throw FormatError("idempotent used as an operation input");
  return p;
}

std::vector<std::string> pattern_key(const InputPattern& p) {
  std::vector<std::string> k;
  for (Basis b : p.prefix) k.push_back(token(b));
  k.push_back(p.star ? "*" : "|");
  for (Basis b : p.suffix) k.push_back(token(b));
  return k;
}

}  // namespace

json to_json(const TypeDModule& n) {
  json gens = json::array();
  for (std::size_t i : name_order(n.gens)) {
    const auto& g = n.gens[i];
    json e{{"name", g.name}, {"idempotent", idem_token(g.idem)}};
    if (g.grading) e["grading"] = {{"maslov", g.grading->maslov}, {"alexander", g.grading->alexander}};
    gens.push_back(e);
  }
  std::vector<std::tuple<std::string, std::string, std::string>> arrows;
  for (const auto& a : n.delta) arrows.push_back({n.gens[a.src].name, token(a.coef), n.gens[a.tgt].name});
  std::sort(arrows.begin(), arrows.end());
  json delta = json::array();
  for (const auto& [f, c, t] : arrows) delta.push_back({{"from", f}, {"coef", c}, {"to", t}});
  return json{{"kind", "typeD"}, {"generators", gens}, {"delta", delta}};
}

TypeDModule typed_from_json(const json& j) {
  return guarded([&] {
    expect_kind(j, "typeD");
    TypeDModule n;
    for (const auto& g : j.at("generators")) {
      std::optional<Grading> gr;
      if (g.contains("grading"))
        gr = Grading{g["grading"].at("maslov").get<int>(), g["grading"].at("alexander").get<int>()};
      n.add_gen(g.at("name").get<std::string>(), parse_idem(g.at("idempotent")), gr);
    }
    check_unique_names(n.gens);
    for (const auto& a : j.at("delta")) {
      Arrow ar{n.index(a.at("from").get<std::string>()), parse_token(a.at("coef")),
               n.index(a.at("to").get<std::string>())};
      if (n.delta.count(ar)) throw FormatError("duplicate arrow from " + n.gens[ar.src].name);
      n.delta.insert(ar);
    }
    return n;
  });
}

json to_json(const TypeDAModule& m) {
  json gens = json::array();
  for (std::size_t i : name_order(m.gens)) {
    const auto& g = m.gens[i];
    gens.push_back({{"name", g.name}, {"out", idem_token(g.out_idem)}, {"in", idem_token(g.in_idem)}});
  }
  std::vector<std::tuple<std::string, std::vector<std::string>, std::string, std::string, const DAOp*>> ops;
  for (const auto& o : m.ops)
    ops.push_back({m.gens[o.src].name, pattern_key(o.in), token(o.out), m.gens[o.tgt].name, &o});
  std::sort(ops.begin(), ops.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a), std::get<3>(a)) <
           std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b), std::get<3>(b));
  });
  json arr = json::array();
  for (const auto& [f, k, out, t, o] : ops)
    arr.push_back({{"from", f}, {"inputs", pattern_json(o->in)}, {"out", out}, {"to", t}});
  return json{{"kind", "typeDA"}, {"generators", gens}, {"ops", arr}};
}

TypeDAModule typeda_from_json(const json& j) {
  return guarded([&] {
    expect_kind(j, "typeDA");
    TypeDAModule m;
    for (const auto& g : j.at("generators"))
      m.add_gen(g.at("name").get<std::string>(), parse_idem(g.at("out")), parse_idem(g.at("in")));
    check_unique_names(m.gens);
    for (const auto& o : j.at("ops")) {
      DAOp op{m.index(o.at("from").get<std::string>()), parse_pattern(o.at("inputs")),
              parse_token(o.at("out")), m.index(o.at("to").get<std::string>())};
      if (m.ops.count(op)) throw FormatError("duplicate operation from " + m.gens[op.src].name);
      m.ops.insert(op);
    }
    return m;
  });
}

json to_json(const TypeAModule& m) {
  json gens = json::array();
  for (std::size_t i : name_order(m.gens))
    gens.push_back({{"name", m.gens[i].name}, {"idempotent", idem_token(m.gens[i].idem)}});
  std::vector<std::tuple<std::string, std::vector<std::string>, std::string, const AOp*>> ops;
  for (const auto& o : m.ops) ops.push_back({m.gens[o.src].name, pattern_key(o.in), m.gens[o.tgt].name, &o});
  std::sort(ops.begin(), ops.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<0>(a), std::get<1>(a), std::get<2>(a)) <
           std::tie(std::get<0>(b), std::get<1>(b), std::get<2>(b));
  });
  json arr = json::array();
  for (const auto& [f, k, t, o] : ops) arr.push_back({{"from", f}, {"inputs", pattern_json(o->in)}, {"to", t}});
  return json{{"kind", "typeA"}, {"generators", gens}, {"ops", arr}};
}

TypeAModule typea_from_json(const json& j) {
  return guarded([&] {
    expect_kind(j, "typeA");
    TypeAModule m;
    for (const auto& g : j.at("generators"))
      m.add_gen(g.at("name").get<std::string>(), parse_idem(g.at("idempotent")));
    check_unique_names(m.gens);
    for (const auto& o : j.at("ops")) {
      AOp op{m.index(o.at("from").get<std::string>()), parse_pattern(o.at("inputs")),
             m.index(o.at("to").get<std::string>())};
      if (m.ops.count(op)) throw FormatError("duplicate operation from " + m.gens[op.src].name);
      m.ops.insert(op);
    }
    return m;
  });
}

namespace {

json cfk_arrows(const CFKComplex& c, const CFKMap& m) {
  std::vector<std::tuple<std::string, int, int, std::string>> v;
  for (const auto& a : m) v.push_back({c.gens[a.src].name, a.u, a.v, c.gens[a.tgt].name});
  std::sort(v.begin(), v.end());
  json arr = json::array();
  for (const auto& [f, u, vv, t] : v) arr.push_back({{"from", f}, {"u", u}, {"v", vv}, {"to", t}});
  return arr;
}

CFKMap parse_cfk_arrows(const CFKComplex& c, const json& arr) {
  CFKMap m;
  for (const auto& a : arr) {
    CFKArrow x{c.index(a.at("from").get<std::string>()), a.value("u", 0), a.value("v", 0),
               c.index(a.at("to").get<std::string>())};
    if (x.u < 0 || x.v < 0) throw FormatError("negative exponent");
    if (m.count(x)) throw FormatError("duplicate arrow from " + c.gens[x.src].name);
    m.insert(x);
  }
  return m;
}

}  // namespace

json to_json(const CFKComplex& c) {
  json gens = json::array();
  for (std::size_t i : name_order(c.gens))
    gens.push_back({{"name", c.gens[i].name}, {"maslov", c.gens[i].maslov}, {"alexander", c.gens[i].alexander}});
  json j{{"kind", "cfk"}, {"ring", c.ring == Ring::UV ? "UV" : "R"}, {"generators", gens},
         {"delta", cfk_arrows(c, c.delta)}};
  if (c.iota) j["iota"] = cfk_arrows(c, *c.iota);
  return j;
}

CFKComplex cfk_from_json(const json& j) {
  return guarded([&] {
    expect_kind(j, "cfk");
    CFKComplex c;
    auto ring = j.value("ring", std::string("UV"));
    if (ring != "UV" && ring != "R") throw FormatError("unknown ring " + ring);
    c.ring = ring == "UV" ? Ring::UV : Ring::R;
    for (const auto& g : j.at("generators"))
      c.add_gen(g.at("name").get<std::string>(), g.at("maslov").get<int>(), g.at("alexander").get<int>());
    check_unique_names(c.gens);
    c.delta = parse_cfk_arrows(c, j.at("delta"));
    if (j.contains("iota")) c.iota = parse_cfk_arrows(c, j["iota"]);
    return c;
  });
}

json to_json(const TypeDMorphism& h, const TypeDModule& src, const TypeDModule& tgt) {
  std::vector<std::tuple<std::string, std::string, std::string>> v;
  for (const auto& e : h.entries) v.push_back({src.gens[e.src].name, token(e.coef), tgt.gens[e.tgt].name});
  std::sort(v.begin(), v.end());
  json arr = json::array();
  for (const auto& [f, c, t] : v) arr.push_back({{"from", f}, {"coef", c}, {"to", t}});
  return json{{"kind", "morphism"}, {"entries", arr}};
}

TypeDMorphism morphism_from_json(const json& j, const TypeDModule& src, const TypeDModule& tgt) {
  return guarded([&] {
    expect_kind(j, "morphism");
    TypeDMorphism h{src.size(), tgt.size(), {}};
    for (const auto& e : j.at("entries")) {
      Arrow a{src.index(e.at("from").get<std::string>()), parse_token(e.at("coef")),
              tgt.index(e.at("to").get<std::string>())};
      if (h.entries.count(a)) throw FormatError("duplicate morphism entry");
      if (left_idem(a.coef) != src.gens[a.src].idem || right_idem(a.coef) != tgt.gens[a.tgt].idem)
        throw FormatError("morphism entry incompatible with idempotents");
      h.entries.insert(a);
    }
    return h;
  });
}

AnyObject any_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw FormatError("document has no kind");
  auto k = j["kind"].get<std::string>();
  if (k == "typeD") return typed_from_json(j);
  if (k == "typeDA") return typeda_from_json(j);
  if (k == "typeA") return typea_from_json(j);
  if (k == "cfk") return cfk_from_json(j);
  throw FormatError("unknown kind " + k);
}

json any_to_json(const AnyObject& o) {
  return std::visit([](const auto& x) { return to_json(x); }, o);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path) {
  auto text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream ss;
  for (unsigned int i = 0; i < len; ++i) ss << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return ss.str();
}

}  // namespace hfb
