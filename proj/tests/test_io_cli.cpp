#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "stagtor/cli.hpp"

using namespace stagtor;

namespace {

const char* kSource = STAGTOR_SOURCE_DIR;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliRun {
  int exit_code;
  std::string out, err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int rc = run_cli(args, out, err);
  return {rc, out.str(), err.str()};
}

std::vector<std::string> corpus_files() {
  return {"p1", "p2", "affine1", "affine2", "quadric", "p1xp1", "hirzebruch3", "blowup_a2",
          "torus2"};
}

std::string corpus_path(const std::string& name) {
  return std::string(kSource) + "/corpus/" + name + ".fan";
}

}  // namespace

TEST_CASE("round trip: parse-serialize-parse is stable on the whole corpus") {
  for (const std::string& name : corpus_files()) {
    Workspace w1 = load_workspace(corpus_path(name));
    std::string s1 = serialize_workspace(w1);
    Workspace w2 = parse_workspace(s1);
    std::string s2 = serialize_workspace(w2);
    CAPTURE(name);
    CHECK(s1 == s2);
    CHECK(w1.fan.size() == w2.fan.size());
    CHECK(w1.sstructures.size() == w2.sstructures.size());
    CHECK(w1.complexes.size() == w2.complexes.size());
  }
}

TEST_CASE("parsed corpus content is as expected") {
  Workspace p1 = load_workspace(corpus_path("p1"));
  CHECK(p1.fan.size() == 3);
  CHECK(p1.sstructures.count("standard"));
  CHECK(p1.pls.count("o2"));
  // the ray-value shorthand lifted to per-cone covectors
  CHECK(p1.pls.at("o2").at(1) == make_vec({-1}));
  CHECK(p1.pls.at("o2").at(2) == make_vec({1}));
  CHECK(p1.complexes.size() == 8);
  CHECK(validate_fan(p1.fan).empty());

  Workspace a2 = load_workspace(corpus_path("affine2"));
  CHECK(a2.modules.size() == 4);
  CHECK(validate_complex(a2.complexes.at("kos")).empty());
}

TEST_CASE("exit codes: 0 valid, 1 semantic violation, 2 parse error") {
  CHECK(run({"validate", corpus_path("p1")}).exit_code == 0);
  CHECK(run({"validate", std::string(kSource) + "/tests/data/bad_sstructure.fan"}).exit_code == 1);
  CHECK(run({"validate", std::string(kSource) + "/tests/data/bad_missing_faces.fan"}).exit_code ==
        1);
  CliRun dangling = run({"validate", std::string(kSource) + "/tests/data/bad_dangling_ref.fan"});
  CHECK(dangling.exit_code == 2);
  CHECK(dangling.err.find("out of range") != std::string::npos);
  CHECK(run({"nonsense"}).exit_code == 2);
  CHECK(run({"membership", corpus_path("p1"), "--complex", "nope", "--sstructure", "trivial",
             "--perversity", "zero"})
            .exit_code == 2);
}

TEST_CASE("reports are byte-identical across runs and match the golden files") {
  struct Row {
    std::string golden;
    std::vector<std::string> args;
  };
  std::vector<Row> rows = {
      {"validate_p1.txt", {"validate", corpus_path("p1")}},
      {"enumerate_p1_perv.txt",
       {"enumerate", corpus_path("p1"), "--what", "perversities", "--sstructure", "trivial",
        "--anchor", "0=0", "--list"}},
      {"enumerate_p2_perv.txt",
       {"enumerate", corpus_path("p2"), "--what", "perversities", "--sstructure", "trivial",
        "--anchor", "0=0"}},
      {"enumerate_p1_sstr.txt",
       {"enumerate", corpus_path("p1"), "--what", "sstructures", "--bound", "2", "--list"}},
      {"selfdual_p1.txt",
       {"selfdual", corpus_path("p1"), "--sstructure", "standard", "--bound", "1"}},
      {"selfdual_p1_trivial.txt", {"selfdual", corpus_path("p1"), "--sstructure", "trivial"}},
      {"membership_kos.txt",
       {"membership", corpus_path("affine2"), "--complex", "kos", "--sstructure", "standard",
        "--perversity", "zero"}},
      {"membership_kos_shift.txt",
       {"membership", corpus_path("affine2"), "--complex", "kos_shift", "--sstructure",
        "standard", "--perversity", "zero"}},
      {"membership_p1_multi.txt",
       {"membership", corpus_path("p1"), "--complex", "o_plus", "--complex", "k_plus",
        "--sstructure", "standard", "--perversity", "middle", "--pl", "o2"}},
      {"truncate_free0.txt",
       {"truncate", corpus_path("affine2"), "--module", "free0", "--sstructure", "standard",
        "-w", "0"}},
      {"format_p1.txt", {"format", corpus_path("p1")}},
      {"svg_p2.txt",
       {"svg", corpus_path("p2"), "--sstructure", "trivial", "--perversity", "zero"}},
  };
  for (const Row& row : rows) {
    CliRun first = run(row.args);
    CliRun second = run(row.args);
    CAPTURE(row.golden);
    CHECK(first.out == second.out);
    CHECK(first.exit_code == second.exit_code);
    CHECK(first.out == slurp(std::string(kSource) + "/tests/golden/" + row.golden));
  }
}

TEST_CASE("selfdual witness file is a valid workspace with a verified witness") {
  std::string out_path = std::string(STAGTOR_BINARY_DIR) + "/selfdual_witness.fan";
  CliRun r = run({"selfdual", corpus_path("p1"), "--sstructure", "standard", "--bound", "1", "-o",
                  out_path});
  REQUIRE(r.exit_code == 0);
  Workspace w = load_workspace(out_path);
  REQUIRE(w.pls.count("selfdual_chi"));
  REQUIRE(w.perversities.count("selfdual_p"));
  const SStructure& a = w.sstructures.at("standard");
  CHECK(validate_pl(w.fan, w.pls.at("selfdual_chi")).empty());
  CHECK(validate_perversity(w.fan, a, w.pls.at("selfdual_chi"), w.perversities.at("selfdual_p"))
            .ok());
  // the witness file round-trips like any other corpus member
  CHECK(serialize_workspace(parse_workspace(serialize_workspace(w))) == serialize_workspace(w));
}

TEST_CASE("truncate emits a loadable module file") {
  std::string out_path = std::string(STAGTOR_BINARY_DIR) + "/truncated.fan";
  CliRun r = run({"truncate", corpus_path("affine2"), "--module", "free0", "--sstructure",
                  "standard", "-w", "-2", "-o", out_path});
  REQUIRE(r.exit_code == 0);
  Workspace w = load_workspace(out_path);
  REQUIRE(w.modules.count("free0_sigma"));
  CHECK(w.modules.at("free0_sigma").is_zero());
}

TEST_CASE("parse errors carry line information") {
  CHECK_THROWS_WITH_AS(parse_workspace("stagfan 2\n"), doctest::Contains("version"), parse_error);
  CHECK_THROWS_AS(parse_workspace("stagfan 1\nLATTICE { rank 0 }\n"), parse_error);
  try {
    parse_workspace("stagfan 1\nLATTICE { rank 1 }\nRAYS [ (1) ]\nCONES [ [ 4 ] ]\n");
    FAIL("expected parse error");
  } catch (const parse_error& e) {
    CHECK(e.line() == 4);
  }
  // module with a relation degree outside the semigroup
  std::string bad_module =
      "stagfan 1\nLATTICE { rank 1 }\nRAYS [ (1) ]\nCONES [ [ ] [ 0 ] ]\n"
      "MODULE m { chart 1 gens [ (0) ] rels [ (0 (-1)) ] }\n";
  CHECK_THROWS_AS(parse_workspace(bad_module), parse_error);
}

TEST_CASE("non-Gorenstein duality refusal surfaces in membership") {
  // 1/3(1,1)-type cone: no kappa, so the D>=0 side is refused
  std::string text =
      "stagfan 1\nLATTICE { rank 2 }\nRAYS [ (-1,3) (1,0) ]\nCONES [ [ ] [ 0 ] [ 1 ] [ 0 1 ] ]\n"
      "SSTRUCTURE t { 0 (0,0) 1 (0,0) 2 (0,0) 3 (0,0) }\n"
      "PERVERSITY z { 0 0 1 0 2 0 3 0 }\n"
      "COMPLEX o { chart 3 term 0 [ (0,0) ] }\n";
  std::string path = std::string(STAGTOR_BINARY_DIR) + "/nongorenstein.fan";
  {
    std::ofstream f(path);
    f << text;
  }
  CliRun r = run({"membership", path, "--complex", "o", "--sstructure", "t", "--perversity", "z"});
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("refused") != std::string::npos);
}
