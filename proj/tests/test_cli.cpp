#include "crysrig/cli.hpp"
#include "crysrig/framework_io.hpp"

#include "support.hpp"

#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <sstream>

using namespace crysrig;
using crysrig::testing::data_path;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli_main(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("crysrig_test_" + name)).string();
}

}  // namespace

TEST_CASE("analyze") {
  auto r = run({"analyze", "--builtin", "kagome", "--mode", "strict"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("m=1 s=3") != std::string::npos);

  r = run({"analyze", "--builtin", "hexahedron", "--mode", "strict"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("m=0") != std::string::npos);

  r = run({"analyze", "--builtin", "kagome", "--mode", "space", "bogus"});
  CHECK(r.code == kExitInputError);
  CHECK(r.err.find("bogus") != std::string::npos);

  r = run({"analyze", "--mode", "affine", data_path("kagome.json"), "--json"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["modes"][0]["m"] == 1);
  CHECK(j["modes"][0]["f"] == 3);

  r = run({"analyze", data_path("square_grid.json"), "--mode", "space",
           "custom:" + data_path("shear_free.json")});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("m=0 s=0 f=3") != std::string::npos);

  r = run({"analyze", "--builtin", "square_grid", "--mode", "space", "symmetric", "--tol", "1e-8"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("tol = 1e-08") != std::string::npos);
}

TEST_CASE("input errors exit with 2") {
  CHECK(run({}).code == kExitInputError);
  CHECK(run({"frobnicate"}).code == kExitInputError);
  CHECK(run({"analyze"}).code == kExitInputError);
  CHECK(run({"analyze", "--builtin", "nope"}).code == kExitInputError);
  CHECK(run({"analyze", "--builtin", "kagome", data_path("kagome.json")}).code == kExitInputError);
  CHECK(run({"analyze", data_path("missing.json")}).code == kExitInputError);
  CHECK(run({"analyze", "--builtin", "kagome", "--mode", "loose"}).code == kExitInputError);
  CHECK(run({"analyze", "--builtin", "kagome", "--tol", "-1"}).code == kExitInputError);
  CHECK(run({"symmetry", "--builtin", "kagome", "--element", "nope"}).code == kExitInputError);
  CHECK(run({"supercell", "--builtin", "kagome", "--n", "2"}).code == kExitInputError);
  CHECK(run({"supercell", "--builtin", "kagome", "--n", "2,x"}).code == kExitInputError);
  CHECK(run({"svg", "--builtin", "hexahedron", "--cells", "1x1x1", "-o", temp_file("h.svg")}).code ==
        kExitInputError);
}

TEST_CASE("help and builtins") {
  auto r = run({"--help"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("analyze") != std::string::npos);
  r = run({"builtins"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "square_grid\nkagome\nhexahedron\n");
}

TEST_CASE("symmetry") {
  auto r = run({"symmetry", "--builtin", "kagome", "--characters", "--json"});
  CHECK(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["symmetries"].size() == 3);
  CHECK(j["symmetries"][1]["name"] == "rot3");
  CHECK(j["symmetries"][1]["m_g"] == 1);
  CHECK(j["symmetries"][1]["predictor_fires"] == true);

  r = run({"symmetry", "--builtin", "hexahedron", "--element", "rot3"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("inconclusive") != std::string::npos);
}

TEST_CASE("supercell and svg files") {
  const std::string path = temp_file("super.json");
  auto r = run({"supercell", "--builtin", "kagome", "--n", "2,2", "-o", path});
  REQUIRE(r.code == kExitOk);
  const auto fw = parse_framework(read_file(path));
  CHECK(fw.num_vertices() == 12);
  CHECK(fw.num_edges() == 24);
  r = run({"analyze", path});
  CHECK(r.code == kExitOk);
  std::remove(path.c_str());

  const std::string svg = temp_file("k.svg");
  r = run({"svg", "--builtin", "kagome", "--cells", "0:2,-1:1", "-o", svg});
  REQUIRE(r.code == kExitOk);
  CHECK(read_file(svg).find("<svg") != std::string::npos);
  std::remove(svg.c_str());
}
