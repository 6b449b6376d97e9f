#include <doctest.h>

#include <filesystem>

#include "hfbord/builtins.hpp"
#include "hfbord/io.hpp"

using namespace hfb;
namespace fs = std::filesystem;

TEST_CASE("serialization round-trips and is canonical") {
  auto b = make_builtins();
  for (const auto& [name, text] : builtin_files(b)) {
    auto obj = any_from_json(json::parse(text));
    CHECK_MESSAGE(dump(any_to_json(obj)) == text, name);
  }
  // permuted generators come back in canonical order
  TypeDModule n = trefoil_cfd(), m;
  for (std::size_t i = n.size(); i-- > 0;) m.add_gen(n.gens[i].name, n.gens[i].idem);
  for (const auto& a : n.delta) m.add(n.gens[a.src].name, a.coef, n.gens[a.tgt].name);
  CHECK(dump(to_json(m)) == dump(to_json(n)));
  auto back = typed_from_json(to_json(m));
  CHECK(dump(to_json(back)) == dump(to_json(n)));
}

TEST_CASE("malformed documents") {
  json d = to_json(cfd_t0());
  json dup = d;
  dup["delta"].push_back(dup["delta"][0]);
  CHECK_THROWS_AS(typed_from_json(dup), FormatError);
  json dupgen = d;
  dupgen["generators"].push_back(dupgen["generators"][0]);
  CHECK_THROWS_AS(typed_from_json(dupgen), FormatError);
  json badcoef = d;
  badcoef["delta"][0]["coef"] = "r13";
  CHECK_THROWS_AS(typed_from_json(badcoef), FormatError);
  json dangling = d;
  dangling["delta"][0]["to"] = "nowhere";
  CHECK_THROWS_AS(typed_from_json(dangling), FormatError);
  CHECK_THROWS_AS(any_from_json(json{{"kind", "typeQ"}}), FormatError);
  CHECK_THROWS_AS(any_from_json(json::array()), FormatError);
}

TEST_CASE("morphisms") {
  auto n = figure8_cfd();
  auto k = figure8_k_maps(n);
  auto j = to_json(k.k2_cycle, n, n);
  CHECK(morphism_from_json(j, n, n) == k.k2_cycle);
}

TEST_CASE("data directory and checksums") {
  fs::path dir = fs::temp_directory_path() / "hfbord_io_test";
  fs::remove_all(dir);
  write_builtins(dir.string());
  auto b = load_builtins(dir.string());
  CHECK(dump(to_json(b.az)) == dump(to_json(derive_az())));
  CHECK(dump(to_json(load_cfk(dir.string(), "figure8"))) == dump(to_json(figure8_cfk())));
  // tampering is detected
  auto p = dir / "cfd_t0.json";
  auto text = read_text_file(p.string());
  write_text_file(p.string(), text + " ");
  CHECK_THROWS_AS(load_builtins(dir.string()), FormatError);
  fs::remove_all(dir);
  CHECK_THROWS_AS(load_builtins(dir.string()), FormatError);
}

TEST_CASE("shipped data is current") {
  const std::string dir = HFBORD_DEFAULT_DATA_DIR;
  for (const auto& [name, text] : builtin_files(make_builtins()))
    CHECK_MESSAGE(read_text_file((fs::path(dir) / name).string()) == text, name);
  CHECK_NOTHROW(load_builtins(dir));
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
