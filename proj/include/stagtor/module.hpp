#pragma once

#include <memory>

#include "stagtor/sstructure.hpp"

namespace stagtor {

// An up-closed S-stable set of weights, stored by its minimal generators
// (unit-reduced, lex-sorted). member(x) iff x - g lies in S for some g.
struct UpSet {
  std::vector<IVec> gens;

  bool empty() const { return gens.empty(); }
  friend bool operator==(const UpSet& a, const UpSet& b) { return a.gens == b.gens; }
};

UpSet make_upset(const ChartSpec& chart, std::vector<IVec> gens);
bool upset_member(const ChartSpec& chart, const UpSet& u, const IVec& x);
UpSet upset_union(const ChartSpec& chart, const UpSet& a, const UpSet& b);
UpSet upset_intersect(const ChartSpec& chart, const UpSet& a, const UpSet& b);
UpSet upset_translate(const ChartSpec& chart, const UpSet& u, const IVec& d);

// Minimal elements of {x in S : <x, v_t> >= b_t for all t}, where each v_t
// lies in the chart cone (so the set is an S-module). Gordan-style: lift to
// exponent vectors over the pointed Hilbert basis, scan the bounding box of
// the minimal solutions, reduce.
std::vector<IVec> semigroup_module_mingens(const ChartSpec& chart,
                                           const std::vector<std::pair<IVec, Int>>& constraints);

// A finite direct sum of cyclic monomial modules over the chart ring: free
// generators of the given degrees, killed by the single-term relations
// e^mu * gen_i = 0. Weight spaces have dimension 0 or 1 per generator, which
// makes every support computation an exact lattice test.
struct MonomialModule {
  std::shared_ptr<const ChartSpec> chart;
  std::vector<IVec> gen_degrees;
  std::vector<std::pair<int, IVec>> relations;  // (generator index, mu in S)

  bool weight_alive(int gen, const IVec& chi) const;
  int weight_dim(const IVec& chi) const;
  bool is_zero() const { return gen_degrees.empty(); }
};

MonomialModule make_module(std::shared_ptr<const ChartSpec> chart, std::vector<IVec> gen_degrees,
                           std::vector<std::pair<int, IVec>> relations);

MonomialModule free_module(std::shared_ptr<const ChartSpec> chart, const IVec& degree);

MonomialModule zero_module(std::shared_ptr<const ChartSpec> chart);

// Drops dead generators (killed by a unit relation), reduces relation sets to
// minimal ones, and sorts everything into canonical order.
MonomialModule normalize(const MonomialModule& m);

// Exact weight-space dimensions over the closed coordinate box [lo, hi].
std::vector<std::pair<IVec, int>> supp_query(const MonomialModule& m, const IVec& lo,
                                             const IVec& hi);

// max over surviving generators of <xi_i, A_C>; nullopt encodes the zero
// module. Equals the sup over the full weight support since semigroup
// directions only decrease the pairing.
std::optional<Int> module_max_level(const MonomialModule& m, const SStructure& a, ConeId c);

// A submodule presented in the same class, with per-generator provenance.
struct Submodule {
  MonomialModule module;
  // (source generator in the ambient module, degree of the new generator)
  std::vector<std::pair<int, IVec>> inclusion;
};

// sigma'_{<= w}: the largest submodule all of whose weights chi satisfy
// <chi, A_D> <= w for every face D of the chart cone with A_D nonzero.
Submodule sigma_prime_le_w(const MonomialModule& m, const SStructure& a, const Int& w);

// Maximal submodule set-theoretically supported on the union Z of orbit
// closures with A_C nonzero (the I_Z-power-torsion part).
Submodule i_Z_hat_shriek(const MonomialModule& m, const SStructure& a);

// sigma' for w >= 0, sigma' after the Z-torsion part for w < 0.
Submodule sigma_le_w(const MonomialModule& m, const SStructure& a, const Int& w);

// The quotient M / sigma_{<= w} M, presented by extra monomial relations.
MonomialModule sigma_quotient(const MonomialModule& m, const SStructure& a, const Int& w);

// Truncation-exactness gate: sigma_{<=w}(M / sigma_{<=w} M) must vanish and
// the truncation must sit in filtration level w.
bool verify_S4(const MonomialModule& m, const SStructure& a, const Int& w);

struct ExtendResult {
  MonomialModule module;
  // whether the degree-xi class survives restriction to the closed orbit
  bool class_survives = false;
};

// sigma'_{<= w} of the free rank-one module of degree xi; requires
// <xi, A_D> <= w at the chart cone D.
ExtendResult extend_line_bundle(std::shared_ptr<const ChartSpec> chart, const IVec& xi,
                                const SStructure& a, const Int& w);

}  // namespace stagtor
