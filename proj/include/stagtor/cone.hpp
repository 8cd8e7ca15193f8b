#pragma once

#include "stagtor/snf.hpp"

namespace stagtor {

// A rational polyhedral cone in canonical form. `rays` are the extreme rays
// of the pointed part (primitive, lex-sorted); `lineality` is a deterministic
// basis of the lineality lattice. The H-representation is cached: the cone is
// exactly { v : <h,v> >= 0 for h in facet_normals, <e,v> = 0 for e in span_perp }.
class Cone {
 public:
  Cone() = default;

  static Cone from_generators(std::vector<IVec> gens, Index rank);
  static Cone from_inequalities(const std::vector<IVec>& ineqs,
                                const std::vector<IVec>& eqs, Index rank);
  static Cone zero_cone(Index rank);

  Index ambient_rank() const { return rank_; }
  Index dim() const { return dim_; }
  Index codim() const { return rank_ - dim_; }
  bool is_strongly_convex() const { return lineality_.empty(); }
  bool is_zero() const { return dim_ == 0; }

  const std::vector<IVec>& rays() const { return rays_; }
  const std::vector<IVec>& lineality() const { return lineality_; }
  const std::vector<IVec>& facet_normals() const { return facet_normals_; }
  const std::vector<IVec>& span_perp() const { return span_perp_; }

  // All generators: rays plus +-lineality basis.
  std::vector<IVec> generators() const;

  bool contains(const IVec& v) const;
  bool contains(const Cone& other) const;
  // Membership in the relative interior (all facet inequalities strict).
  bool contains_in_relative_interior(const IVec& v) const;

  friend bool operator==(const Cone& a, const Cone& b) {
    return a.rank_ == b.rank_ && a.rays_ == b.rays_ && a.lineality_ == b.lineality_;
  }
  friend bool operator!=(const Cone& a, const Cone& b) { return !(a == b); }
  bool lex_less(const Cone& b) const;

 private:
  Index rank_ = 0;
  Index dim_ = 0;
  std::vector<IVec> rays_;
  std::vector<IVec> lineality_;
  std::vector<IVec> facet_normals_;
  std::vector<IVec> span_perp_;
};

Cone dual_cone(const Cone& c);
Cone negate_cone(const Cone& c);
Cone intersect_cones(const Cone& a, const Cone& b);

// All faces of a strongly convex cone, including {0} and the cone itself.
std::vector<Cone> faces(const Cone& c);

// The smallest face of c containing v (v must lie in c).
Cone minimal_face_containing(const Cone& c, const IVec& v);

bool is_face_of(const Cone& f, const Cone& c);

// Hilbert data of the semigroup C ∩ Z^n: `units` is a basis of the unit
// lattice (lineality ∩ Z^n) and `generators` is the lifted Hilbert basis of
// the pointed quotient. For pointed C this is the unique minimal generating
// set (the indecomposable elements).
struct HilbertData {
  std::vector<IVec> units;
  std::vector<IVec> generators;
};

HilbertData hilbert_basis(const Cone& c);

// Raw double description: generator form of {x : <a,x> >= 0 for a in ineqs,
// <e,x> = 0 for e in eqs}. Returns (lineality basis, extreme rays), both in
// deterministic order.
std::pair<std::vector<IVec>, std::vector<IVec>> dd_from_inequalities(
    const std::vector<IVec>& ineqs, const std::vector<IVec>& eqs, Index rank);

}  // namespace stagtor
