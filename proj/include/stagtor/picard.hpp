#pragma once

#include "stagtor/sstructure.hpp"

namespace stagtor {

// A piecewise-linear function on a fan, stored as one ambient covector per
// cone. Only the class of chi_C modulo L_C = C^perp is meaningful; face
// compatibility says the classes agree along face inclusions.
struct PLFunction {
  std::map<ConeId, IVec> per_cone;

  const IVec& at(ConeId id) const {
    auto it = per_cone.find(id);
    if (it == per_cone.end()) throw stagtor_error("PLFunction: missing cone id");
    return it->second;
  }
  bool covers(const Fan& f) const {
    for (int i = 0; i < f.size(); ++i)
      if (!per_cone.count(i)) return false;
    return true;
  }
};

struct PLViolation {
  ConeId child, parent;
  std::string what;
};

PLFunction zero_pl(const Fan& f);

std::vector<PLViolation> validate_pl(const Fan& f, const PLFunction& chi);

// Lifts per-ray integer values to per-cone covectors; throws when a cone has
// no integral covector matching its ray values. Ray order follows the
// canonical cone ids of the one-dimensional cones.
PLFunction pl_from_ray_values(const Fan& f, const std::map<ConeId, Int>& ray_values);

// <chi_C, v> for v in the cone of id c; rejects v outside the cone.
Int eval_pl(const Fan& f, const PLFunction& chi, const IVec& v, ConeId c);

// alt(C, L(chi)) = chi(-A_C), evaluated on the cone C where -A_C lives.
Int altitude(const Fan& f, const SStructure& a, const PLFunction& chi, ConeId c);

class non_gorenstein_error : public stagtor_error {
 public:
  explicit non_gorenstein_error(const std::string& what) : stagtor_error(what) {}
};

// Gorenstein witness data: for each cone, a covector pairing to 1 with every
// primitive ray generator, when one exists.
struct CanonicalData {
  std::map<ConeId, std::optional<IVec>> kappa;  // canonical reps mod L_C
  Index shift = 0;                              // the ambient rank n

  bool gorenstein(ConeId id) const {
    auto it = kappa.find(id);
    return it != kappa.end() && it->second.has_value();
  }
  const IVec& kappa_at(ConeId id) const {
    auto it = kappa.find(id);
    if (it == kappa.end() || !it->second)
      throw non_gorenstein_error("chart cone " + std::to_string(id) +
                                 " is not Gorenstein: duality is refused");
    return *it->second;
  }
};

CanonicalData canonical_data(const Fan& f);

}  // namespace stagtor
