#pragma once

#include <optional>

#include "stagtor/core.hpp"

namespace stagtor {

struct SmithForm {
  IMat u;  // unimodular, rows x rows
  IMat d;  // diagonal, d_i | d_{i+1}, entries >= 0
  IMat v;  // unimodular, cols x cols
  Index rank = 0;
};

// U * M * V = D with diagonal D, d_i | d_{i+1}.
SmithForm smith_normal_form(const IMat& m);

// One integer solution x of A x = b, if any.
std::optional<IVec> solve_integer(const IMat& a, const IVec& b);

// Basis of {x : A x = 0} over the integers (columns). Always saturated.
std::vector<IVec> integer_kernel(const IMat& a);

// Basis of the saturation span_Q(vs) ∩ Z^n, deterministic.
std::vector<IVec> saturate_span(const std::vector<IVec>& vs, Index rank);

// True iff v lies in the sublattice generated by the columns of basis.
bool in_lattice(const std::vector<IVec>& basis, const IVec& v);

IMat columns_to_matrix(const std::vector<IVec>& cols, Index rank);

// Projection Z^n -> Z^n / L for a saturated sublattice L, with a canonical
// integral section. project() kills exactly L; canonical_rep(x) is the unique
// distinguished coset representative of x mod L.
class LatticeProjection {
 public:
  LatticeProjection() = default;
  // basis: columns spanning L (need not be saturated; the saturation is used).
  LatticeProjection(const std::vector<IVec>& basis, Index rank);

  Index ambient_rank() const { return n_; }
  Index sub_rank() const { return l_; }
  Index quotient_rank() const { return n_ - l_; }

  IVec project(const IVec& x) const;        // length n - l
  IVec section(const IVec& y) const;        // length n
  IVec canonical_rep(const IVec& x) const;  // section(project(x))
  bool in_sublattice(const IVec& x) const { return is_zero(project(x)); }

 private:
  Index n_ = 0, l_ = 0;
  IMat u_;      // unimodular: u_ * (saturated basis) = [I_l; 0]
  IMat u_inv_;  // exact inverse of u_
};

IMat integer_inverse(const IMat& u);  // inverse of a unimodular matrix

}  // namespace stagtor
