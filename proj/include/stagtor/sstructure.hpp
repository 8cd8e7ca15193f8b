#pragma once

#include "stagtor/fan.hpp"

namespace stagtor {

// An s-structure on a fan: a lattice vector A_C in -C for every cone, with
// zero-heredity (A_C = 0 forces A = 0 on every face of C).
struct SStructure {
  std::map<ConeId, IVec> assignments;

  const IVec& at(ConeId id) const {
    auto it = assignments.find(id);
    if (it == assignments.end()) throw stagtor_error("SStructure: missing cone id");
    return it->second;
  }
  bool covers(const Fan& f) const {
    for (int i = 0; i < f.size(); ++i)
      if (!assignments.count(i)) return false;
    return true;
  }
};

struct SViolation {
  ConeId cone;
  std::string what;
};

// Checks A_C in -C and zero-heredity; throws if a cone id is missing.
std::vector<SViolation> validate_sstructure(const Fan& f, const SStructure& a);

// The step of the line bundle of weight xi on the orbit of C.
Int step_weight(const SStructure& a, ConeId c, const IVec& xi);

// True iff every weight pairs with A_C to at most w (empty set: true).
bool serre_le_w(const SStructure& a, ConeId c, const std::vector<IVec>& weights, const Int& w);

struct F1Result {
  bool ok = false;
  HilbertData certificate;  // indecomposables of C^v (units + lifted generators)
};

// Checks that the indecomposables of the pointed quotient of C^v generate it,
// for C a face of the chart cone. Always true for valid charts; kept as a
// regression gate on the cone machinery.
F1Result check_F1(const ChartSpec& chart, ConeId c);

// All s-structures with every coordinate of every A_C bounded by B in
// absolute value, in deterministic order.
std::vector<SStructure> enumerate_sstructures(const Fan& f, long bound);

// Lattice points of a cone with all coordinates in [-radius, radius].
std::vector<IVec> cone_box_points(const Cone& c, long radius);

}  // namespace stagtor
