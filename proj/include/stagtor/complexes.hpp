#pragma once

#include "stagtor/module.hpp"
#include "stagtor/perversity.hpp"

namespace stagtor {

// A bounded complex of degree-shifted free modules over a chart ring. The
// differential d^k maps term k to term k+1; entry (i, j) multiplies
// generator j of term k into generator i of term k+1 by a scalar, the
// monomial character being forced to xi^k_j - xi^{k+1}_i.
struct PerfectComplex {
  std::shared_ptr<const ChartSpec> chart;
  std::map<int, std::vector<IVec>> terms;  // k -> generator degrees
  std::map<int, QMat> diffs;               // k -> matrix |terms[k+1]| x |terms[k]|

  const std::vector<IVec>& term(int k) const;
  bool has_term(int k) const { return terms.count(k) && !terms.at(k).empty(); }
  IVec entry_char(int k, Index i, Index j) const;  // xi^k_j - xi^{k+1}_i
};

struct ComplexViolation {
  std::string what;
};

std::vector<ComplexViolation> validate_complex(const PerfectComplex& f);

// F[m]: term k of the shift is term k+m of F, differentials carry (-1)^m.
PerfectComplex shift_complex(const PerfectComplex& f, int m);

// Derived restriction data for the orbit of a face C: an entry survives iff
// its character lies in L_C = C^perp ∩ M (a unit on the orbit), else it is
// zeroed. Face properties make the result a genuine complex.
PerfectComplex restrict_to_orbit(const PerfectComplex& f, ConeId c);

struct OrbitEntry {
  int k = 0;
  IVec class_rep;  // canonical representative mod L_C
  int dim = 0;
  Int level;  // <class, A_C>
};

struct OrbitCohomologyReport {
  ConeId cone = -1;
  std::vector<OrbitEntry> entries;  // sorted by (k, class)
};

// Cohomology of the restriction to the orbit of C, computed per weight class
// with unit characters evaluated at 1 (the orbit category is semisimple).
OrbitCohomologyReport orbit_cohomology(const PerfectComplex& f, ConeId c, const SStructure& a);

// Serre-Grothendieck dual RHom(F, K ⊗ L(chi)) for a Gorenstein chart: term k
// is the twisted dual of term -k-n. The (sign and shift) conventions are
// spelled out in docs/conventions.md and pinned by the dualizing-complex
// tests.
PerfectComplex dualize(const PerfectComplex& f, const PLFunction& chi, const CanonicalData& k);

// The dualizing complex of the chart itself: R(kappa) placed in degree -n.
PerfectComplex dualizing_complex(std::shared_ptr<const ChartSpec> chart, const CanonicalData& k);

struct MembershipRow {
  ConeId cone = -1;
  int k = 0;
  IVec class_rep;
  Int level;
  Int bound;
  bool pass = true;
};

struct MembershipResult {
  bool ok = true;
  std::vector<MembershipRow> rows;
  std::optional<MembershipRow> first_violation() const {
    for (const auto& r : rows)
      if (!r.pass) return r;
    return std::nullopt;
  }
};

// F in D^{<=0}: <xi, A_C> <= p(C) - k for every weight class of every
// h^k(L i_C^* F), over all faces C of the chart cone.
MembershipResult in_D_le0(const PerfectComplex& f, const SStructure& a, const Perversity& p);

// F in D^{>=0}, decided through the dual: the report of dualize(F) must obey
// the dual perversity bounds.
MembershipResult in_D_ge0(const PerfectComplex& f, const SStructure& a, const Perversity& p,
                          const PLFunction& chi, const CanonicalData& k);

bool in_heart(const PerfectComplex& f, const SStructure& a, const Perversity& p,
              const PLFunction& chi, const CanonicalData& k);

// Supports of R i_C^! F via the duality identity
//   supp h^k(L i_C^* DF) = psi_C - supp h^{-cod(C)-k}(R i_C^! F),
// where psi is the twist class of the dualizing object.
OrbitCohomologyReport ri_shriek_supports(const PerfectComplex& f, ConeId c, const SStructure& a,
                                         const PLFunction& chi, const CanonicalData& k);

// Euler characteristic per weight class is preserved by the restriction.
bool euler_check(const PerfectComplex& f, ConeId c, const SStructure& a);

// Koszul complex of the characters s_1..s_m twisted by xi: the resolution of
// the corresponding quotient, placed in degrees [-m, 0].
PerfectComplex koszul_complex(std::shared_ptr<const ChartSpec> chart,
                              const std::vector<IVec>& chars, const IVec& xi);

}  // namespace stagtor
