// Command-line front end. Exit codes: 0 success, 1 mathematical failure,
// 2 malformed input, 3 cap exhausted, 4 usage error.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hfbord/builtins.hpp"
#include "hfbord/cfk_to_cfd.hpp"
#include "hfbord/involution.hpp"
#include "hfbord/io.hpp"
#include "hfbord/reproduce.hpp"

using namespace hfb;

namespace {

enum Exit { kOk = 0, kMath = 1, kFormat = 2, kCap = 3, kUsage = 4 };

struct Options {
  Caps caps;
  std::string format = "text";
  std::string data_dir;
};

// Every command returns its exit status and prints its report.
struct Emit {
  const Options& opt;
  json doc = json::object();
  std::ostringstream text;
  int finish(int status) {
    if (opt.format == "json") std::cout << dump(doc);
    else std::cout << text.str();
    return status;
  }
};

AnyObject load_any(const std::string& path) { return any_from_json(read_json_file(path)); }

template <class T>
T load_as(const std::string& path, const char* what) {
  auto o = load_any(path);
  if (auto* p = std::get_if<T>(&o)) return *p;
  throw FormatError(path + ": expected a " + what + " file");
}

json bit_rows(const BitMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::string r;
    for (std::size_t j = 0; j < m.cols(); ++j) r += m.get(i, j) ? '1' : '0';
    rows.push_back(r);
  }
  return rows;
}

json invariants_json(const ActionInvariants& inv) {
  return {{"dimension", inv.dim}, {"min_poly", poly_string(inv.min_poly)},
          {"rank_profile", inv.rank_profile}};
}

Builtins builtins(const Options& o) { return load_builtins(o.data_dir); }

int cmd_check(const Options& o, const std::string& path) {
  Emit e{o};
  auto obj = load_any(path);
  bool ok = true;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        CheckResult r;
        if constexpr (std::is_same_v<T, TypeDModule>) {
          r = check_structure(x);
          e.doc["kind"] = "typeD";
        } else if constexpr (std::is_same_v<T, TypeDAModule>) {
          r = check_da(x);
          e.doc["kind"] = "typeDA";
        } else if constexpr (std::is_same_v<T, TypeAModule>) {
          r = check_a(x);
          e.doc["kind"] = "typeA";
        } else {
          auto c = check_cfk(x);
          r.ok = c.ok;
          r.message = c.message;
          e.doc["kind"] = "cfk";
          if (c.ok && x.iota) {
            auto i = check_involution(x);
            e.doc["involution"] = i.ok;
            e.text << "involution: " << (i.ok ? "ok" : "FAIL " + i.message) << "\n";
            r.ok = i.ok;
          }
        }
        ok = r.ok;
        e.doc["ok"] = r.ok;
        e.doc["message"] = r.message;
        e.text << (r.ok ? "ok" : "FAIL: " + r.message) << "\n";
      },
      obj);
  return e.finish(ok ? kOk : kMath);
}

int cmd_reduce(const Options& o, const std::string& path) {
  Emit e{o};
  auto obj = load_any(path);
  if (auto* n = std::get_if<TypeDModule>(&obj)) {
    e.doc = to_json(reduce(*n).reduced);
  } else if (auto* m = std::get_if<TypeDAModule>(&obj)) {
    auto r = reduce_da(*m);
    e.doc = to_json(r.reduced);
    if (!r.complete) std::cerr << "note: some idempotent operations could not be cancelled exactly\n";
  } else {
    throw FormatError(path + ": reduce takes a typeD or typeDA file");
  }
  e.text << dump(e.doc);
  return e.finish(kOk);
}

int cmd_box(const Options& o, const std::string& left, const std::string& right) {
  Emit e{o};
  auto l = load_any(left);
  auto n = load_as<TypeDModule>(right, "typeD");
  if (auto* m = std::get_if<TypeDAModule>(&l)) {
    e.doc = to_json(box_da_d(*m, n, {o.caps.box_path}));
    e.text << dump(e.doc);
  } else if (auto* a = std::get_if<TypeAModule>(&l)) {
    auto pc = box_a_d(*a, n, {o.caps.box_path});
    e.doc = {{"dimension", pc.names.size()}, {"homology_dimension", pc.homology_dim()}};
    e.text << "complex of dimension " << pc.names.size() << ", homology dimension "
           << pc.homology_dim() << "\n";
  } else {
    throw FormatError(left + ": box takes a typeDA or typeA file on the left");
  }
  return e.finish(kOk);
}

int cmd_mor(const Options& o, const std::string& a, const std::string& b) {
  Emit e{o};
  auto n1 = load_as<TypeDModule>(a, "typeD"), n2 = load_as<TypeDModule>(b, "typeD");
  MorComplex m(n1, n2);
  e.doc = {{"chain_dimension", m.dim()}, {"homology_dimension", m.homology().dimension}};
  e.text << "Mor: chain dimension " << m.dim() << ", homology dimension "
         << m.homology().dimension << "\n";
  return e.finish(kOk);
}

int cmd_cfk2cfd(const Options& o, const std::string& path, std::optional<int> tau) {
  Emit e{o};
  auto c = over_r(load_as<CFKComplex>(path, "cfk"));
  int t = tau ? *tau : default_tau(c);
  auto tr = translate(c, t);
  e.doc = to_json(tr.module);
  e.text << dump(e.doc);
  return e.finish(kOk);
}

int cmd_hat_iota(const Options& o, const std::string& path, const std::string& iota_path) {
  Emit e{o};
  auto b = builtins(o);
  auto n = load_as<TypeDModule>(path, "typeD");
  std::optional<TypeDMorphism> iota;
  if (!iota_path.empty()) {
    iota = morphism_from_json(read_json_file(iota_path), box_da_d(b.az, n, {o.caps.box_path}), n);
  } else {
    iota = find_equivalence(b.az, n, o.caps.enumeration);
    if (!iota) {
      e.text << "no equivalence AZ box N -> N found\n";
      e.doc["error"] = "no equivalence";
      return e.finish(kMath);
    }
  }
  auto mf = model_and_f(b.az, {false, {o.caps.box_path}});
  HatIotaReport r;
  try {
    r = hat_iota(b.az, mf, n, *iota);
  } catch (const std::invalid_argument& ex) {
    e.text << ex.what() << "\n";
    e.doc["error"] = ex.what();
    return e.finish(kMath);
  }
  e.doc = {{"matrix", bit_rows(r.e)}, {"invariants", invariants_json(r.inv)},
           {"invertible", r.invertible}, {"ambiguous", r.ambiguous}};
  e.text << r.text();
  return e.finish(kOk);
}

int cmd_solve(const Options& o, const std::string& cfd_path, const std::string& cfk_path) {
  Emit e{o};
  auto b = builtins(o);
  auto n = load_as<TypeDModule>(cfd_path, "typeD");
  auto c = load_as<CFKComplex>(cfk_path, "cfk");
  if (!c.iota) throw FormatError(cfk_path + ": the complex carries no involution");
  auto known = action_invariants(*hat_truncate(c).action);
  auto f = find_equivalence(b.az, n, o.caps.enumeration);
  if (!f) {
    e.text << "no equivalence AZ box N -> N found\n";
    return e.finish(kMath);
  }
  auto mf = model_and_f(b.az, {false, {o.caps.box_path}});
  auto s = solve_involution(b.az, mf, n, known, *f, {}, o.caps.enumeration);
  json cands = json::array();
  for (const auto& k : s.candidates) {
    std::string bits;
    for (std::size_t i = 0; i < k.correction.size(); ++i) bits += k.correction.get(i) ? '1' : '0';
    cands.push_back({{"expression", k.expression}, {"class", bits},
                     {"invariants", invariants_json(k.report.inv)}});
  }
  e.doc = {{"target", invariants_json(known)}, {"base", invariants_json(s.base_report.inv)},
           {"end_dimension", s.end_dim}, {"examined", s.examined}, {"candidates", cands}};
  e.text << "target: " << invariants_string(known) << "\n" << s.text();
  return e.finish(s.candidates.empty() ? kMath : kOk);
}

int cmd_local(const Options& o, const std::string& path, const std::string& direction) {
  Emit e{o};
  auto c = over_r(load_as<CFKComplex>(path, "cfk"));
  if (!c.iota) throw FormatError(path + ": the complex carries no involution");
  auto dir = direction == "to" ? LocalDirection::ToTrivial : LocalDirection::FromTrivial;
  auto r = local_map_search(c, dir, o.caps.uv_exponent, o.caps.enumeration);
  e.doc = {{"found", r.found}, {"trace", r.trace}};
  if (r.map) e.doc["map"] = *r.map;
  for (const auto& l : r.trace) e.text << l << "\n";
  e.text << (r.found ? "found: " + *r.map : std::string("none at cap")) << "\n";
  return e.finish(r.found ? kOk : kMath);
}

int cmd_validate(const Options& o) {
  Emit e{o};
  auto rep = validate_builtins(builtins(o));
  json lines = json::array();
  for (const auto& l : rep.lines)
    lines.push_back({{"constant", l.constant}, {"property", l.property}, {"ok", l.ok},
                     {"detail", l.detail}});
  e.doc = {{"ok", rep.ok()}, {"checks", lines}};
  e.text << rep.text();
  if (rep.ok()) e.text << "all builtin checks pass\n";
  return e.finish(rep.ok() ? kOk : kMath);
}

int cmd_reproduce(const Options& o, std::vector<std::string> targets) {
  Emit e{o};
  auto b = builtins(o);
  if (targets.empty()) targets = reproduce_targets();
  bool ok = true;
  json reports = json::array();
  for (const auto& t : targets) {
    auto r = reproduce(t, b, o.caps);
    ok = ok && r.ok();
    json checks = json::array();
    for (const auto& c : r.checks)
      checks.push_back({{"criterion", c.criterion}, {"label", c.label}, {"ok", c.ok}});
    reports.push_back({{"target", t}, {"ok", r.ok()}, {"checks", checks}, {"report", r.text}});
    e.text << r.text;
  }
  e.doc = {{"ok", ok}, {"targets", reports}};
  return e.finish(ok ? kOk : kMath);
}

int cmd_convert(const std::string& in, const std::string& out) {
  write_text_file(out, dump(any_to_json(load_any(in))));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bordered and involutive Floer computations over the torus algebra"};
  app.require_subcommand(1);
  Options opt;
  opt.data_dir = default_data_dir();
  app.add_option("--cap-enum", opt.caps.enumeration, "enumeration cap (classes)")
      ->check(CLI::PositiveNumber);
  app.add_option("--cap-path", opt.caps.box_path, "path-length cap for box products")
      ->check(CLI::PositiveNumber);
  app.add_option("--cap-uv", opt.caps.uv_exponent, "U/V exponent cap")->check(CLI::PositiveNumber);
  app.add_option("--format", opt.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--data-dir", opt.data_dir, "builtin data directory");

  std::string f1, f2, iota_path, direction = "from";
  std::optional<int> tau;
  std::vector<std::string> targets;
  int status = kOk;
  std::function<int()> run;

  auto* check = app.add_subcommand("check", "check structure equations of a file");
  check->add_option("file", f1)->required();
  check->callback([&] { run = [&] { return cmd_check(opt, f1); }; });
  auto* red = app.add_subcommand("reduce", "cancel idempotent arrows");
  red->add_option("file", f1)->required();
  red->callback([&] { run = [&] { return cmd_reduce(opt, f1); }; });
  auto* box = app.add_subcommand("box", "box tensor product of a typeDA or typeA with a typeD");
  box->add_option("left", f1)->required();
  box->add_option("right", f2)->required();
  box->callback([&] { run = [&] { return cmd_box(opt, f1, f2); }; });
  auto* mor = app.add_subcommand("mor", "morphism complex homology");
  mor->add_option("source", f1)->required();
  mor->add_option("target", f2)->required();
  mor->callback([&] { run = [&] { return cmd_mor(opt, f1, f2); }; });
  auto* c2d = app.add_subcommand("cfk2cfd", "type-D module of the 0-framed complement");
  c2d->add_option("file", f1)->required();
  c2d->add_option("--tau", tau, "tau (default: read off the complex)");
  c2d->callback([&] { run = [&] { return cmd_cfk2cfd(opt, f1, tau); }; });
  auto* hat = app.add_subcommand("hat-iota", "induced action on Mor(CFD(Tinf,nu), N)");
  hat->add_option("file", f1)->required();
  hat->add_option("--iota", iota_path, "morphism file AZ box N -> N (default: search)");
  hat->callback([&] { run = [&] { return cmd_hat_iota(opt, f1, iota_path); }; });
  auto* solve = app.add_subcommand("solve-iota", "solve for a bordered involution");
  solve->add_option("cfd", f1)->required();
  solve->add_option("cfk", f2)->required();
  solve->callback([&] { run = [&] { return cmd_solve(opt, f1, f2); }; });
  auto* local = app.add_subcommand("local-search", "search for iota-local maps");
  local->add_option("file", f1)->required();
  local->add_option("--direction", direction)->check(CLI::IsMember({"from", "to"}));
  local->callback([&] { run = [&] { return cmd_local(opt, f1, direction); }; });
  auto* val = app.add_subcommand("validate", "check the shipped constants");
  val->callback([&] { run = [&] { return cmd_validate(opt); }; });
  auto* rep = app.add_subcommand("reproduce", "run regression targets");
  rep->add_option("targets", targets)->check(CLI::IsMember(reproduce_targets()));
  rep->callback([&] { run = [&] { return cmd_reproduce(opt, targets); }; });
  auto* conv = app.add_subcommand("convert", "canonical re-serialization");
  conv->add_option("input", f1)->required();
  conv->add_option("output", f2)->required();
  conv->callback([&] { run = [&] { return cmd_convert(f1, f2); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    status = run();
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kFormat;
  } catch (const json::exception& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return kFormat;
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kCap;
  } catch (const Divergence& e) {
    std::cerr << "unbounded product: " << e.what() << "\n";
    return kMath;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kFormat;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kMath;
  }
  return status;
}
