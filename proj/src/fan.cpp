#include "stagtor/fan.hpp"

#include <algorithm>
#include <set>

namespace stagtor {

Fan Fan::from_cones(std::vector<Cone> cones, Index rank) {
  for (const Cone& c : cones)
    if (c.ambient_rank() != rank) throw stagtor_error("Fan: cone rank mismatch");
  std::sort(cones.begin(), cones.end(), [](const Cone& a, const Cone& b) { return a.lex_less(b); });
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());

  Fan f;
  f.rank_ = rank;
  f.cones_ = std::move(cones);
  const int n = f.size();
  std::vector<char> has_parent(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Cone& ci = f.cones_[i];
      const Cone& cj = f.cones_[j];
      if (!cj.is_strongly_convex() || !ci.is_strongly_convex()) continue;
      if (ci.dim() >= cj.dim()) continue;
      if (is_face_of(ci, cj)) {
        f.face_rel_.emplace_back(i, j);
        has_parent[i] = 1;
        if (ci.dim() + 1 == cj.dim()) f.codim1_.emplace_back(i, j);
      }
    }
  for (int i = 0; i < n; ++i)
    if (!has_parent[i]) f.maximal_.push_back(i);
  return f;
}

Fan Fan::closure_of(const std::vector<Cone>& maximal, Index rank) {
  std::vector<Cone> all;
  for (const Cone& c : maximal)
    for (Cone& face : faces(c)) all.push_back(std::move(face));
  return from_cones(std::move(all), rank);
}

const Cone& Fan::cone(ConeId id) const {
  if (id < 0 || id >= size()) throw stagtor_error("Fan: invalid cone id");
  return cones_[id];
}

std::optional<ConeId> Fan::find(const Cone& c) const {
  for (int i = 0; i < size(); ++i)
    if (cones_[i] == c) return i;
  return std::nullopt;
}

ConeId Fan::require(const Cone& c) const {
  auto id = find(c);
  if (!id) throw stagtor_error("Fan: cone not present");
  return *id;
}

bool Fan::is_face_pair(ConeId child, ConeId parent) const {
  if (child == parent) return true;
  for (auto& [c, p] : face_rel_)
    if (c == child && p == parent) return true;
  return false;
}

std::vector<ConeId> Fan::face_ids_of(ConeId id) const {
  std::vector<ConeId> out;
  for (auto& [c, p] : face_rel_)
    if (p == id) out.push_back(c);
  out.push_back(id);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FanViolation> validate_fan(const Fan& f) {
  std::vector<FanViolation> out;
  bool has_zero = false;
  for (int i = 0; i < f.size(); ++i) {
    const Cone& c = f.cone(i);
    if (!c.is_strongly_convex())
      out.push_back({"cone " + std::to_string(i) + " is not strongly convex"});
    if (c.is_zero()) has_zero = true;
  }
  if (!has_zero) out.push_back({"zero cone missing"});
  for (int i = 0; i < f.size(); ++i) {
    if (!f.cone(i).is_strongly_convex()) continue;
    for (const Cone& face : faces(f.cone(i)))
      if (!f.find(face))
        out.push_back({"cone " + std::to_string(i) + " has a face of dimension " +
                       std::to_string(face.dim()) + " missing from the fan"});
  }
  for (int i = 0; i < f.size(); ++i)
    for (int j = i + 1; j < f.size(); ++j) {
      const Cone& a = f.cone(i);
      const Cone& b = f.cone(j);
      if (!a.is_strongly_convex() || !b.is_strongly_convex()) continue;
      Cone m = intersect_cones(a, b);
      if (!is_face_of(m, a) || !is_face_of(m, b))
        out.push_back({"intersection of cones " + std::to_string(i) + " and " +
                       std::to_string(j) + " is not a face of both"});
    }
  return out;
}

Fan builtin_fan(const std::string& name, long param) {
  auto e = [&](Index n, Index i) { return unit_vec(n, i); };
  if (name == "affine_space") {
    Index n = param;
    if (n < 1) throw stagtor_error("affine_space: rank must be >= 1");
    std::vector<IVec> gens;
    for (Index i = 0; i < n; ++i) gens.push_back(e(n, i));
    return Fan::closure_of({Cone::from_generators(gens, n)}, n);
  }
  if (name == "torus") {
    Index n = param;
    if (n < 1) throw stagtor_error("torus: rank must be >= 1");
    return Fan::closure_of({Cone::zero_cone(n)}, n);
  }
  if (name == "projective_space") {
    Index n = param;
    if (n < 1) throw stagtor_error("projective_space: rank must be >= 1");
    std::vector<IVec> rays;
    for (Index i = 0; i < n; ++i) rays.push_back(e(n, i));
    IVec last(n);
    for (Index i = 0; i < n; ++i) last[i] = -1;
    rays.push_back(last);
    std::vector<Cone> max;
    for (Index skip = 0; skip <= n; ++skip) {
      std::vector<IVec> gens;
      for (Index i = 0; i <= n; ++i)
        if (i != skip) gens.push_back(rays[i]);
      max.push_back(Cone::from_generators(gens, n));
    }
    return Fan::closure_of(max, n);
  }
  if (name == "p1_x_p1") {
    IVec p1 = make_vec({1, 0}), m1 = make_vec({-1, 0});
    IVec p2 = make_vec({0, 1}), m2 = make_vec({0, -1});
    std::vector<Cone> max;
    for (const IVec& a : {p1, m1})
      for (const IVec& b : {p2, m2}) max.push_back(Cone::from_generators({a, b}, 2));
    return Fan::closure_of(max, 2);
  }
  if (name == "hirzebruch") {
    long a = param;
    if (a < 0) throw stagtor_error("hirzebruch: parameter must be >= 0");
    IVec u1 = make_vec({1, 0}), u2 = make_vec({0, 1}), u4 = make_vec({0, -1});
    IVec u3(2);
    u3[0] = -1;
    u3[1] = a;
    std::vector<Cone> max{Cone::from_generators({u1, u2}, 2), Cone::from_generators({u2, u3}, 2),
                          Cone::from_generators({u3, u4}, 2), Cone::from_generators({u4, u1}, 2)};
    return Fan::closure_of(max, 2);
  }
  if (name == "quadric_cone")
    return Fan::closure_of({Cone::from_generators({make_vec({1, 0}), make_vec({1, 2})}, 2)}, 2);
  if (name == "blowup_A2") {
    IVec e1 = make_vec({1, 0}), e2 = make_vec({0, 1}), m = make_vec({1, 1});
    return Fan::closure_of({Cone::from_generators({e1, m}, 2), Cone::from_generators({m, e2}, 2)},
                           2);
  }
  throw stagtor_error("unknown builtin fan: " + name);
}

std::vector<ConeId> star_cones(const Fan& f, ConeId id) {
  f.cone(id);  // bounds check
  std::vector<ConeId> out{id};
  for (auto& [c, p] : f.face_relation())
    if (c == id) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

Fan star_quotient_fan(const Fan& f, ConeId id) {
  const Cone& base = f.cone(id);
  LatticeProjection proj(base.rays(), f.ambient_rank());
  std::vector<Cone> cones;
  for (ConeId s : star_cones(f, id)) {
    std::vector<IVec> gens;
    for (const IVec& g : f.cone(s).generators()) {
      IVec q = proj.project(g);
      if (!is_zero(q)) gens.push_back(primitive(q));
    }
    cones.push_back(Cone::from_generators(gens, proj.quotient_rank()));
  }
  return Fan::from_cones(std::move(cones), proj.quotient_rank());
}

const ChartFace& ChartSpec::face(ConeId id) const {
  for (const ChartFace& cf : faces_)
    if (cf.id == id) return cf;
  throw stagtor_error("ChartSpec: cone is not a face of the chart cone");
}

ChartSpec chart_spec(const Fan& f, ConeId id) {
  ChartSpec spec;
  spec.rank_ = f.ambient_rank();
  spec.chart_id_ = id;
  spec.chart_cone_ = f.cone(id);
  if (!spec.chart_cone_.is_strongly_convex())
    throw stagtor_error("chart_spec: chart cone must be strongly convex");
  spec.dual_ = dual_cone(spec.chart_cone_);
  spec.semigroup_ = hilbert_basis(spec.dual_);
  spec.unit_proj_ = LatticeProjection(spec.semigroup_.units, spec.rank_);
  for (const IVec& g : spec.semigroup_.generators)
    spec.pointed_gens_.push_back(spec.unit_proj_.project(g));

  for (ConeId fid : f.face_ids_of(id)) {
    ChartFace cf;
    cf.id = fid;
    cf.cone = f.cone(fid);
    cf.ray_sum = zero_vec(spec.rank_);
    if (cf.cone.rays().empty()) {
      cf.l_basis.clear();
      for (Index i = 0; i < spec.rank_; ++i) cf.l_basis.push_back(unit_vec(spec.rank_, i));
    } else {
      IMat rays_mat(spec.rank_, static_cast<Index>(cf.cone.rays().size()));
      for (size_t r = 0; r < cf.cone.rays().size(); ++r) {
        rays_mat.col(static_cast<Index>(r)) = cf.cone.rays()[r];
        cf.ray_sum += cf.cone.rays()[r];
      }
      cf.l_basis = integer_kernel(rays_mat.transpose());
    }
    cf.class_proj = LatticeProjection(cf.l_basis, spec.rank_);
    spec.faces_.push_back(std::move(cf));
  }
  return spec;
}

}  // namespace stagtor
