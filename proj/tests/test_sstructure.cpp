#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "stagtor/sstructure.hpp"

using namespace stagtor;

namespace {

SStructure trivial_sstructure(const Fan& f) {
  SStructure a;
  for (int i = 0; i < f.size(); ++i) a.assignments[i] = zero_vec(f.ambient_rank());
  return a;
}

// P1 fan ids in canonical order: 0 = {0}, 1 = ray(-1), 2 = ray(+1)
SStructure p1_sstructure(const Fan& p1, long a_minus, long a_plus) {
  SStructure a = trivial_sstructure(p1);
  a.assignments[1] = make_vec({a_minus});
  a.assignments[2] = make_vec({a_plus});
  return a;
}

}  // namespace

TEST_CASE("trivial s-structure is valid on every builtin fan") {
  for (const char* name : {"projective_space", "p1_x_p1", "quadric_cone", "blowup_A2"}) {
    Fan f = builtin_fan(name, name == std::string("projective_space") ? 2 : 0);
    CHECK(validate_sstructure(f, trivial_sstructure(f)).empty());
  }
}

TEST_CASE("P1 sign conditions") {
  Fan p1 = builtin_fan("projective_space", 1);
  REQUIRE(p1.cone(1).rays()[0] == make_vec({-1}));
  REQUIRE(p1.cone(2).rays()[0] == make_vec({1}));
  // A in -C: the ray(+1) cone needs a nonpositive value
  CHECK(validate_sstructure(p1, p1_sstructure(p1, 1, -1)).empty());
  auto bad = validate_sstructure(p1, p1_sstructure(p1, 1, 1));
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].cone == 2);
}

TEST_CASE("missing assignment throws") {
  Fan p1 = builtin_fan("projective_space", 1);
  SStructure partial;
  partial.assignments[0] = make_vec({0});
  CHECK_THROWS_AS(validate_sstructure(p1, partial), stagtor_error);
}

TEST_CASE("step weight is the pairing and kills C-perp directions") {
  Fan f = builtin_fan("affine_space", 2);
  ConeId ray1 = f.require(Cone::from_generators({make_vec({1, 0})}, 2));
  SStructure a = trivial_sstructure(f);
  a.assignments[ray1] = make_vec({-1, 0});
  CHECK(step_weight(a, ray1, make_vec({3, 7})) == -3);
  // invariance under adding lambda in C-perp
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> ent(-5, 5);
  for (int t = 0; t < 20; ++t) {
    IVec xi = make_vec({ent(rng), ent(rng)});
    IVec lambda = make_vec({0, ent(rng)});  // ray-e1 perp
    CHECK(step_weight(a, ray1, xi) == step_weight(a, ray1, IVec(xi + lambda)));
    // additivity
    IVec zeta = make_vec({ent(rng), ent(rng)});
    CHECK(step_weight(a, ray1, IVec(xi + zeta)) ==
          step_weight(a, ray1, xi) + step_weight(a, ray1, zeta));
  }
}

TEST_CASE("serre level membership") {
  Fan f = builtin_fan("affine_space", 2);
  ConeId top = f.maximal_cones()[0];
  SStructure a = trivial_sstructure(f);
  a.assignments[top] = make_vec({-1, -1});
  CHECK(serre_le_w(a, top, {}, -100));
  ConeId ray1 = f.require(Cone::from_generators({make_vec({1, 0})}, 2));
  a.assignments[ray1] = make_vec({-1, 0});
  CHECK(serre_le_w(a, ray1, {make_vec({1, 0})}, -1));
  CHECK(!serre_le_w(a, top, {make_vec({1, 0}), make_vec({0, 1})}, -2));
}

TEST_CASE("F1 spanning check on the corpus charts") {
  Fan a2 = builtin_fan("affine_space", 2);
  ChartSpec smooth = chart_spec(a2, a2.maximal_cones()[0]);
  for (const ChartFace& face : smooth.faces()) {
    F1Result r = check_F1(smooth, face.id);
    CHECK(r.ok);
  }
  F1Result top = check_F1(smooth, smooth.chart_cone_id());
  std::vector<IVec> expect{make_vec({0, 1}), make_vec({1, 0})};
  CHECK(top.certificate.generators == expect);

  Fan q = builtin_fan("quadric_cone");
  ChartSpec qchart = chart_spec(q, q.maximal_cones()[0]);
  F1Result qr = check_F1(qchart, qchart.chart_cone_id());
  CHECK(qr.ok);
  std::vector<IVec> expect_q{make_vec({0, 1}), make_vec({1, 0}), make_vec({2, -1})};
  CHECK(qr.certificate.generators == expect_q);

  Fan t = builtin_fan("torus", 2);
  ChartSpec tchart = chart_spec(t, 0);
  F1Result tr = check_F1(tchart, 0);
  CHECK(tr.ok);
  CHECK(tr.certificate.generators.empty());
}

TEST_CASE("enumeration counts: P1 bound 2 gives 9, affine line bound 3 gives 4") {
  Fan p1 = builtin_fan("projective_space", 1);
  CHECK(enumerate_sstructures(p1, 2).size() == 9);
  CHECK(enumerate_sstructures(p1, 0).size() == 1);
  Fan a1 = builtin_fan("affine_space", 1);
  CHECK(enumerate_sstructures(a1, 3).size() == 4);
}

TEST_CASE("every enumerated s-structure validates, and restriction to charts stays valid") {
  for (const char* name : {"projective_space", "quadric_cone", "blowup_A2"}) {
    Fan f = builtin_fan(name, name == std::string("projective_space") ? 2 : 0);
    auto all = enumerate_sstructures(f, 1);
    CHECK(!all.empty());
    for (const SStructure& a : all) {
      CHECK(validate_sstructure(f, a).empty());
      // induced s-structure on each affine chart (sub-fan of faces)
      for (ConeId max : f.maximal_cones()) {
        std::vector<Cone> sub;
        for (ConeId fid : f.face_ids_of(max)) sub.push_back(f.cone(fid));
        Fan chart_fan = Fan::from_cones(sub, f.ambient_rank());
        SStructure induced;
        for (int i = 0; i < chart_fan.size(); ++i)
          induced.assignments[i] = a.at(f.require(chart_fan.cone(i)));
        CHECK(validate_sstructure(chart_fan, induced).empty());
      }
    }
  }
}

TEST_CASE("enumeration against the brute-force oracle on P1") {
  // independent oracle: all assignments from the full box, filtered by the
  // validator alone
  Fan p1 = builtin_fan("projective_space", 1);
  long bound = 2;
  std::vector<long> vals;
  for (long v = -bound; v <= bound; ++v) vals.push_back(v);
  int count = 0;
  for (long v1 : vals)
    for (long v2 : vals) {
      SStructure a;
      a.assignments[0] = make_vec({0});
      a.assignments[1] = make_vec({v1});
      a.assignments[2] = make_vec({v2});
      if (validate_sstructure(p1, a).empty()) ++count;
    }
  CHECK(count == static_cast<int>(enumerate_sstructures(p1, bound).size()));
}
