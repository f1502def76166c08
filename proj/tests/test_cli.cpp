#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <random>
#include <sys/wait.h>

#include "fracperim/io.hpp"

using namespace fracperim;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
};

// Runs the CLI with stderr folded into stdout when `merge` is set.
Run run(const std::string& args, bool merge = false) {
  const std::string cmd = std::string(FRACPERIM_BIN) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int raw = pclose(pipe);
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, out};
}

struct Fixture {
  fs::path dir;
  Fixture() {
    dir = fs::temp_directory_path() / ("fracperim-cli-" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
    write_text(file("two.json"), R"({"label":"two","mu":[1,1],"dist":{"type":"matrix","data":[[0,1],[1,0]]}})");
    write_text(file("chain3.json"), R"({"label":"chain","dist":{"type":"euclidean","coords":[[0],[1],[2]]}})");
    write_text(file("bad.json"), R"({"mu":[1,1,1],"dist":{"type":"matrix","data":[[0,1,5],[1,0,1],[5,1,0]]}})");
    std::string grid = R"({"label":"grid","dist":{"type":"euclidean","coords":[)";
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) grid += (i || j ? "," : "") + std::string("[") + std::to_string(i) + "," + std::to_string(j) + "]";
    write_text(file("grid.json"), grid + "]}}");
  }
  ~Fixture() { fs::remove_all(dir); }
  std::string file(const std::string& name) const { return (dir / name).string(); }
};

json body(const Run& r) { return json::parse(r.out); }

}  // namespace

TEST_CASE_FIXTURE(Fixture, "coarea on two points") {
  auto r = run("verify coarea --space " + file("two.json") + " --s 0.5");
  CHECK(r.status == 0);
  const json j = body(r);
  CHECK(j["result"]["lhs"] == j["result"]["rhs"]);
  CHECK(j.contains("timestamp"));

  r = run("verify coarea --space " + file("two.json") + " --s 0.5 --csv");
  CHECK(r.status == 0);
  CHECK(r.out.find("name,lhs,rhs,empirical_constant,pass") == 0);
  CHECK(r.out.find("true") != std::string::npos);
}

TEST_CASE_FIXTURE(Fixture, "condenser capacity on the collinear example") {
  const auto r = run("capacity condenser --space " + file("chain3.json") + " --A 0 --F 0,1 --s 0.5");
  CHECK(r.status == 0);
  const json j = body(r);
  CHECK(j["result"]["energy"].get<double>() == doctest::Approx(1.4714045207910317).epsilon(1e-14));
  CHECK(j["result"]["mask"] == json::array({0}));
}

TEST_CASE_FIXTURE(Fixture, "input errors exit with status 2") {
  const std::string missing = file("missing.json");
  auto r = run("capacity total --space " + missing + " --A 0", true);
  CHECK(r.status == 2);
  CHECK(r.out.find(missing) != std::string::npos);

  r = run("capacity total --space " + file("bad.json") + " --A 0", true);
  CHECK(r.status == 2);
  CHECK(r.out.find("(0,1,2)") != std::string::npos);

  CHECK(run("capacity total --space " + file("two.json") + " --A 5").status == 2);
  CHECK(run("capacity total --space " + file("two.json") + " --A 0 --s 1.5").status == 2);
  CHECK(run("capacity condenser --space " + file("two.json") + " --A 0 --F all").status == 2);
  CHECK(run("verify harnack --space " + file("two.json")).status == 2);
  CHECK(run("no-such-command").status == 2);
}

TEST_CASE_FIXTURE(Fixture, "obstacle solve with the LP cross-check") {
  const auto r = run("solve obstacle --space " + file("grid.json") + " --omega 8,9,15,16 --psi -inf --f @" +
                     file("f.json") + " --lp");
  // f.json missing: input error
  CHECK(r.status == 2);
  std::string f = "[";
  for (int i = 0; i < 49; ++i) f += (i ? "," : "") + std::to_string(i / 7);
  write_text(file("f.json"), f + "]");
  const auto ok = run("solve obstacle --space " + file("grid.json") + " --omega 8,9,15,16 --f @" + file("f.json") + " --lp");
  CHECK(ok.status == 0);
  const json j = body(ok);
  CHECK(j["result"]["lp_relative_difference"].get<double>() <= 1e-9);
  CHECK(j["result"]["field"].size() == 49);

  const auto set = run("solve set-obstacle --space " + file("grid.json") + " --A 8 --omega 8,9,15,16");
  CHECK(set.status == 0);
  CHECK(body(set)["result"]["mask"].is_array());
}

TEST_CASE_FIXTURE(Fixture, "scans and verification commands") {
  const std::string g = "--space " + file("grid.json") + " --s 0.5 ";
  auto r = run("scan thinness " + g + "--A 24,25 --x 24 --radii 2,1");
  CHECK(r.status == 0);
  CHECK(body(r)["result"]["values"].size() == 2);
  r = run("scan density " + g + "--E 24,25,31,32 --x 24 --R 4 --M 2 --count 3 --csv");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("radius,value", 0) == 0);
  CHECK(run("scan density " + g + "--E 24 --x 24 --radii 1,2").status == 2);
  r = run("content hausdorff " + g + "--A 0,1,2 --R 2 --mode exact");
  CHECK(r.status == 0);
  CHECK(body(r)["result"]["value"].get<double>() > 0.0);

  r = run("verify isoperimetric " + g + "--E 24 --x 24 --r 2");
  CHECK(r.status == 0);
  r = run("verify harnack " + g + "--omega 16,17,18,23,24,25,30,31,32 --f 0 --psi @" + file("psi.json") +
          " --x0 24 --r 1 --R 2");
  CHECK(r.status == 2);  // psi file missing
  r = run("verify harnack " + g + "--omega 16,17,18,23,24,25,30,31,32 --f 0 --psi 1 --x0 24 --r 1 --R 2 --k0 0.5");
  CHECK(r.status == 0);
  CHECK(body(r)["result"]["flags"].dump().find("solver output") != std::string::npos);
  r = run("verify harnack " + g + "--u @" + file("u.json") + " --x0 24 --r 1 --R 2");
  CHECK(r.status == 2);
  std::string u = "[";
  for (int i = 0; i < 49; ++i) u += (i ? "," : "") + std::to_string((i % 7) * 0.1);
  write_text(file("u.json"), u + "]");
  r = run("verify harnack " + g + "--u @" + file("u.json") + " --x0 24 --r 1 --R 2 --k0 0.2");
  CHECK(r.status == 0);
  const json h = body(r);
  bool unverified = false;
  for (const auto& flag : h["result"]["flags"]) unverified |= flag.get<std::string>() == "hypothesis unverified";
  CHECK(unverified);
  r = run("verify harnack " + g + "--u @" + file("u.json") + " --x0 24 --r 1 --R 2 --k0 0.2 --threshold 1e-9");
  CHECK(r.status == 1);
  r = run("verify annulus-k " + g + "--x 24 --r 4 --c0 0.5");
  CHECK((r.status == 0 || r.status == 1));
  r = run("verify perimeter-scan " + g + "--z 24 --radii 3,2,1");
  CHECK(r.status == 0);
}

TEST_CASE_FIXTURE(Fixture, "artifacts, kernel cache and reproducibility") {
  const std::string cache = file("k.bin");
  const std::string args = "capacity total --space " + file("grid.json") + " --A 24 --kernel-cache " + cache +
                           " --out " + file("out");
  const auto a = run(args);
  CHECK(a.status == 0);
  CHECK(fs::exists(cache));
  CHECK(fs::exists(file("out") + "/capacity-total.json"));
  CHECK(fs::exists(file("out") + "/capacity-total.csv"));
  const auto b = run(args);
  json ja = body(a), jb = body(b);
  ja.erase("timestamp");
  jb.erase("timestamp");
  CHECK(ja.dump() == jb.dump());
}

TEST_CASE("suite selection and tolerance") {
  auto r = run("suite --criteria 1,5");
  CHECK(r.status == 0);
  const json j = body(r);
  CHECK(j["result"]["criteria"].size() == 2);
  CHECK(run("suite --criteria 1 --tol 0").status == 1);
  CHECK(run("suite --none").status == 2);
  CHECK(run("suite --criteria 0").status == 2);
}
