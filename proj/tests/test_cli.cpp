#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "hfbord/io.hpp"

using namespace hfb;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + HFBORD_EXE + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

const std::string data = std::string(HFBORD_TEST_DIR) + "/../data";

fs::path scratch() {
  auto d = fs::temp_directory_path() / "hfbord_cli_test";
  fs::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("validate and reproduce") {
  auto v = run("validate");
  CHECK(v.status == 0);
  CHECK(v.out.find("all builtin checks pass") != std::string::npos);
  auto t = run("reproduce trefoil");
  CHECK(t.status == 0);
  CHECK(t.out.find("E^2=id, rank(E+id)=1") != std::string::npos);
  auto again = run("reproduce trefoil");
  CHECK(again.out == t.out);
  auto j = run("--format json reproduce az-model");
  CHECK(j.status == 0);
  CHECK(json::parse(j.out)["ok"] == true);
}

TEST_CASE("exit codes") {
  auto dir = scratch();
  write_text_file((dir / "broken.json").string(), "{\"kind\": \"typeD\", \"generators\": [");
  CHECK(run("check " + (dir / "broken.json").string()).status == 2);
  CHECK(run("check " + (dir / "missing.json").string()).status == 2);
  CHECK(run("check " + data + "/cfd/trefoil.json").status == 0);
  CHECK(run("check " + data + "/cfk/figure8.json").status == 0);
  CHECK(run("frobnicate").status == 4);
  CHECK(run("reproduce no-such-target").status == 4);
  // 2^14 End classes against a cap of 16
  CHECK(run("--cap-enum 16 solve-iota " + data + "/cfd/figure8.json " + data + "/cfk/figure8.json")
            .status == 3);
  CHECK(run("local-search " + data + "/cfk/figure8.json").status == 1);
  CHECK(run("validate", "HFBORD_DATA_DIR=" + (dir / "nowhere").string()).status == 2);
  CHECK(run("--data-dir " + (dir / "nowhere").string() + " validate").status == 2);

  // x -> r1 y -> r2 z has delta^2 = r12 z
  TypeDModule bad;
  bad.add_gen("x", 0);
  bad.add_gen("y", 1);
  bad.add_gen("z", 0);
  bad.add("x", Basis::R1, "y");
  bad.add("y", Basis::R2, "z");
  write_text_file((dir / "bad.json").string(), dump(to_json(bad)));
  CHECK(run("check " + (dir / "bad.json").string()).status == 1);
}

TEST_CASE("module commands") {
  auto m = run("mor " + data + "/cfd_tinf_nu.json " + data + "/cfd/figure8.json");
  CHECK(m.status == 0);
  CHECK(m.out.find("homology dimension 5") != std::string::npos);
  auto b = run("box " + data + "/cfa_t0.json " + data + "/cfd/model.json");
  CHECK(b.out.find("homology dimension 1") != std::string::npos);
  auto c = run("cfk2cfd " + data + "/cfk/trefoil.json");
  CHECK(c.status == 0);
  CHECK(typed_from_json(json::parse(c.out)).size() == 7);
  auto h = run("--format json hat-iota " + data + "/cfd/trefoil.json");
  CHECK(h.status == 0);
  CHECK(json::parse(h.out)["invariants"]["rank_profile"] == json::array({1, 0}));
  auto s = run("solve-iota " + data + "/cfd/figure8.json " + data + "/cfk/figure8.json");
  CHECK(s.status == 0);
}

TEST_CASE("convert") {
  auto dir = scratch();
  const auto in = data + "/cfd/trefoil.json";
  const auto once = (dir / "once.json").string(), twice = (dir / "twice.json").string();
  REQUIRE(run("convert " + in + " " + once).status == 0);
  REQUIRE(run("convert " + once + " " + twice).status == 0);
  CHECK(read_text_file(once) == read_text_file(in));
  CHECK(read_text_file(twice) == read_text_file(once));

  json j = json::parse(read_text_file(in));
  std::reverse(j["generators"].begin(), j["generators"].end());
  std::reverse(j["delta"].begin(), j["delta"].end());
  write_text_file((dir / "perm.json").string(), dump(j));
  REQUIRE(run("convert " + (dir / "perm.json").string() + " " + once).status == 0);
  CHECK(read_text_file(once) == read_text_file(in));

  j["delta"].push_back(j["delta"][0]);
  write_text_file((dir / "dup.json").string(), dump(j));
  CHECK(run("convert " + (dir / "dup.json").string() + " " + once).status == 2);
  fs::remove_all(dir);
}
