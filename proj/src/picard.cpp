#include "stagtor/picard.hpp"

namespace stagtor {

PLFunction zero_pl(const Fan& f) {
  PLFunction chi;
  for (int i = 0; i < f.size(); ++i) chi.per_cone[i] = zero_vec(f.ambient_rank());
  return chi;
}

std::vector<PLViolation> validate_pl(const Fan& f, const PLFunction& chi) {
  if (!chi.covers(f)) throw stagtor_error("validate_pl: missing cone id");
  std::vector<PLViolation> out;
  for (int i = 0; i < f.size(); ++i)
    if (chi.at(i).size() != f.ambient_rank()) {
      out.push_back({i, i, "covector has wrong rank"});
      return out;
    }
  // chi_C - chi_C' must vanish on the face C', i.e. lie in L_C' = C'^perp
  for (auto& [child, parent] : f.face_relation()) {
    IVec diff = chi.at(parent) - chi.at(child);
    for (const IVec& r : f.cone(child).rays())
      if (pairing(diff, r) != 0) {
        out.push_back({child, parent, "restrictions disagree on the shared face"});
        break;
      }
  }
  return out;
}

PLFunction pl_from_ray_values(const Fan& f, const std::map<ConeId, Int>& ray_values) {
  PLFunction chi;
  for (int i = 0; i < f.size(); ++i) {
    const Cone& c = f.cone(i);
    const auto& rays = c.rays();
    if (rays.empty()) {
      chi.per_cone[i] = zero_vec(f.ambient_rank());
      continue;
    }
    IMat a(static_cast<Index>(rays.size()), f.ambient_rank());
    IVec b(static_cast<Index>(rays.size()));
    for (size_t r = 0; r < rays.size(); ++r) {
      a.row(static_cast<Index>(r)) = rays[r].transpose();
      ConeId rid = f.require(Cone::from_generators({rays[r]}, f.ambient_rank()));
      auto it = ray_values.find(rid);
      if (it == ray_values.end())
        throw stagtor_error("pl_from_ray_values: missing value for ray cone " + std::to_string(rid));
      b[static_cast<Index>(r)] = it->second;
    }
    auto x = solve_integer(a, b);
    if (!x)
      throw stagtor_error("pl_from_ray_values: no integral covector on cone " + std::to_string(i));
    chi.per_cone[i] = *x;
  }
  return chi;
}

Int eval_pl(const Fan& f, const PLFunction& chi, const IVec& v, ConeId c) {
  if (!f.cone(c).contains(v)) throw stagtor_error("eval_pl: vector not in the cone");
  return pairing(chi.at(c), v);
}

Int altitude(const Fan& f, const SStructure& a, const PLFunction& chi, ConeId c) {
  IVec minus_a = -a.at(c);
  return eval_pl(f, chi, minus_a, c);
}

CanonicalData canonical_data(const Fan& f) {
  CanonicalData out;
  out.shift = f.ambient_rank();
  for (int i = 0; i < f.size(); ++i) {
    const Cone& c = f.cone(i);
    const auto& rays = c.rays();
    if (rays.empty()) {
      out.kappa[i] = zero_vec(f.ambient_rank());
      continue;
    }
    IMat a(static_cast<Index>(rays.size()), f.ambient_rank());
    IVec b(static_cast<Index>(rays.size()));
    for (size_t r = 0; r < rays.size(); ++r) {
      a.row(static_cast<Index>(r)) = rays[r].transpose();
      b[static_cast<Index>(r)] = 1;
    }
    auto x = solve_integer(a, b);
    if (!x) {
      out.kappa[i] = std::nullopt;
      continue;
    }
    // kappa is defined modulo L_C; store the canonical coset representative
    LatticeProjection proj(integer_kernel(a), f.ambient_rank());
    out.kappa[i] = proj.canonical_rep(*x);
  }
  return out;
}

}  // namespace stagtor
