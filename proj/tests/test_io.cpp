#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <memory>
#include <random>

#include "fracperim/instances.hpp"
#include "fracperim/io.hpp"

using namespace fracperim;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("fracperim-io-" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("matrix spaces") {
  const json j = json::parse(R"({"label":"two","mu":[1,1],"dist":{"type":"matrix","data":[[0,1],[1,0]]}})");
  const Space sp = space_from_json(j);
  CHECK(sp.size() == 2);
  CHECK(sp.dist(0, 1) == 1.0);
  CHECK(sp.label() == "two");

  const json bad = json::parse(R"({"mu":[1,1,1],"dist":{"type":"matrix","data":[[0,1,5],[1,0,1],[5,1,0]]}})");
  try {
    space_from_json(bad);
    FAIL("triangle violation accepted");
  } catch (const InputError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("triangle") != std::string::npos);
    CHECK(msg.find("(0,1,2)") != std::string::npos);
  }
  CHECK_THROWS_AS(space_from_json(json::parse(R"({"dist":{"type":"matrix","data":[[0]]}})")), InputError);
  CHECK_THROWS_AS(space_from_json(json::parse(R"({"mu":[1,-1],"dist":{"type":"matrix","data":[[0,1],[1,0]]}})")),
                  InputError);
  CHECK_THROWS_AS(space_from_json(json::parse(R"({"mu":[1],"dist":{"type":"ring"}})")), InputError);
}

TEST_CASE("euclidean spaces with weights") {
  const json j = json::parse(
      R"({"dist":{"type":"euclidean","coords":[[0,0],[2,0]]},"weight":{"type":"power","delta":-1,"cell_volume":0.5}})");
  const Space sp = space_from_json(j);
  CHECK(sp.mu(1) == doctest::Approx(0.25));
  CHECK(sp.dist(0, 1) == 2.0);

  const json per_cell = json::parse(
      R"({"dist":{"type":"euclidean","coords":[[1,0],[2,0]]},"weight":{"type":"constant","cell_volume":[2,3]}})");
  const Space c = space_from_json(per_cell);
  CHECK(c.mu(0) == 2.0);
  CHECK(c.mu(1) == 3.0);

  const json explicit_mu = json::parse(R"({"mu":[5,6],"dist":{"type":"euclidean","coords":[[0],[1]]}})");
  CHECK(space_from_json(explicit_mu).mu(1) == 6.0);
}

TEST_CASE("space files round trip and name the path on failure") {
  TempDir dir;
  std::mt19937_64 rng(1);
  const Space sp = random_planar(12, rng);
  save_space(sp, dir.file("s.json"));
  const Space back = load_space(dir.file("s.json"));
  REQUIRE(back.size() == sp.size());
  for (PointId x = 0; x < 12; ++x) {
    CHECK(back.mu(x) == sp.mu(x));
    for (PointId y = 0; y < 12; ++y) CHECK(back.dist(x, y) == doctest::Approx(sp.dist(x, y)).epsilon(1e-15));
  }

  const std::string missing = dir.file("nope.json");
  try {
    load_space(missing);
    FAIL("missing file accepted");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find(missing) != std::string::npos);
  }
  write_text(dir.file("broken.json"), "{not json");
  CHECK_THROWS_AS(load_space(dir.file("broken.json")), InputError);
}

TEST_CASE("mask and field parsing") {
  TempDir dir;
  CHECK(parse_mask("", 4).none());
  CHECK(parse_mask("none", 4).none());
  CHECK(parse_mask("all", 4).count() == 4);
  CHECK(parse_mask("0,3", 4).ids() == std::vector<PointId>{0, 3});
  CHECK_THROWS_AS(parse_mask("0,4", 4), InputError);
  CHECK_THROWS_AS(parse_mask("x", 4), InputError);
  write_text(dir.file("m.json"), "[1, 2]");
  CHECK(parse_mask("@" + dir.file("m.json"), 4).ids() == std::vector<PointId>{1, 2});
  write_text(dir.file("m.txt"), "2\n3\n");
  CHECK(parse_mask("@" + dir.file("m.txt"), 4).ids() == std::vector<PointId>{2, 3});

  const Field f = parse_field("1,-inf,2.5", 3);
  CHECK(f[0] == 1.0);
  CHECK(std::isinf(f[1]));
  CHECK(f[2] == 2.5);
  CHECK_THROWS_AS(parse_field("1,2", 3), InputError);
  write_text(dir.file("f.json"), R"([0.5, null, "-inf"])");
  const Field g = parse_field("@" + dir.file("f.json"), 3);
  CHECK(g[0] == 0.5);
  CHECK(std::isinf(g[1]));
  CHECK(std::isinf(g[2]));
  CHECK(parse_field_or_constant("7", 3) == Field(3, 7.0));
  CHECK(std::isinf(parse_field_or_constant("-inf", 2)[1]));
  CHECK(field_to_json(Field{1.0, kUnconstrained}).dump() == R"([1.0,"-inf"])");
}

TEST_CASE("kernel cache") {
  TempDir dir;
  std::mt19937_64 rng(2);
  const auto sp = std::make_shared<const Space>(random_planar(20, rng));
  const std::string path = dir.file("k.bin");
  const Kernel first = cached_kernel(sp, 0.5, path);
  REQUIRE(fs::exists(path));
  const auto stamp = fs::file_size(path);
  CHECK(stamp == 8 + 16 + 8 * 20 * 19 / 2);
  const Kernel second = cached_kernel(sp, 0.5, path);
  for (PointId x = 0; x < 20; ++x)
    for (PointId y = 0; y < 20; ++y) CHECK(second(x, y) == first(x, y));

  // A different order must not reuse the stored weights.
  CHECK(kernel_key(*sp, 0.5) != kernel_key(*sp, 0.6));
  const Kernel other = cached_kernel(sp, 0.6, path);
  const Kernel direct = assemble(sp, 0.6);
  CHECK(other(0, 1) == direct(0, 1));
}

TEST_CASE("solution serialisation") {
  const auto sp = std::make_shared<const Space>(collinear3());
  const Kernel k = assemble(sp, 0.5);
  const auto sol = condenser_capacity(k, SetMask::from_ids(3, std::vector<PointId>{0}),
                                      SetMask::from_ids(3, std::vector<PointId>{0, 1}));
  const json j = to_json(sol);
  CHECK(j["mask"] == json::array({0}));
  CHECK(j["energy"].get<double>() == doctest::Approx(1.4714045207910317));
  CHECK(j["degenerate"] == true);
  CHECK(j["tie_break"].is_string());
}
