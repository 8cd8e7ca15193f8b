#include <functional>

#include "stagtor/sstructure.hpp"

namespace stagtor {

std::vector<SViolation> validate_sstructure(const Fan& f, const SStructure& a) {
  if (!a.covers(f)) throw stagtor_error("validate_sstructure: assignment missing a cone id");
  std::vector<SViolation> out;
  for (int i = 0; i < f.size(); ++i) {
    const IVec& v = a.at(i);
    if (v.size() != f.ambient_rank()) {
      out.push_back({i, "A_C has wrong rank"});
      continue;
    }
    if (!f.cone(i).contains(IVec(-v))) out.push_back({i, "A_C is not in -C"});
  }
  for (auto& [child, parent] : f.face_relation())
    if (is_zero(a.at(parent)) && !is_zero(a.at(child)))
      out.push_back({child, "zero-heredity violated: parent cone " + std::to_string(parent) +
                                " has A = 0 but this face does not"});
  return out;
}

Int step_weight(const SStructure& a, ConeId c, const IVec& xi) { return pairing(xi, a.at(c)); }

bool serre_le_w(const SStructure& a, ConeId c, const std::vector<IVec>& weights, const Int& w) {
  for (const IVec& xi : weights)
    if (pairing(xi, a.at(c)) > w) return false;
  return true;
}

F1Result check_F1(const ChartSpec& chart, ConeId c) {
  const ChartFace& face = chart.face(c);
  F1Result out;
  Cone cdual = dual_cone(face.cone);
  out.certificate = hilbert_basis(cdual);
  // Pointed quotient of C^v: divide by the unit lattice C^perp.
  LatticeProjection proj(cdual.lineality(), chart.ambient_rank());
  if (proj.quotient_rank() == 0) {
    out.ok = true;  // torus factor only: no ideal to test
    return out;
  }
  std::vector<IVec> qrays;
  for (const IVec& r : cdual.rays()) qrays.push_back(primitive(proj.project(r)));
  Cone q = Cone::from_generators(qrays, proj.quotient_rank());
  std::vector<IVec> qgens;
  for (const IVec& g : out.certificate.generators) qgens.push_back(proj.project(g));

  // generation: every lattice point of the quotient cone in a small box
  // decomposes over the indecomposables
  std::vector<IVec> pts = cone_box_points(q, 4);
  std::map<std::vector<long>, int> memo;  // -1 unknown, 0 no, 1 yes
  auto key = [](const IVec& v) {
    std::vector<long> k;
    for (Index i = 0; i < v.size(); ++i) k.push_back(v[i].get_si());
    return k;
  };
  std::function<bool(const IVec&)> decomposes = [&](const IVec& p) -> bool {
    if (is_zero(p)) return true;
    auto it = memo.find(key(p));
    if (it != memo.end()) return it->second == 1;
    memo[key(p)] = 0;
    bool ok = false;
    for (const IVec& g : qgens) {
      IVec rest = p - g;
      if (q.contains(rest) && decomposes(rest)) {
        ok = true;
        break;
      }
    }
    memo[key(p)] = ok ? 1 : 0;
    return ok;
  };
  out.ok = true;
  for (const IVec& p : pts)
    if (!decomposes(p)) out.ok = false;
  // minimality: no indecomposable splits over the others
  for (const IVec& g : qgens)
    for (const IVec& h : qgens) {
      if (g == h) continue;
      IVec rest = g - h;
      if (!is_zero(rest) && q.contains(rest) && decomposes(rest)) out.ok = false;
    }
  return out;
}

std::vector<IVec> cone_box_points(const Cone& c, long radius) {
  const Index n = c.ambient_rank();
  std::vector<IVec> out;
  std::vector<long> cur(n, -radius);
  IVec v(n);
  while (true) {
    for (Index i = 0; i < n; ++i) v[i] = cur[i];
    if (c.contains(v)) out.push_back(v);
    Index k = 0;
    while (k < n) {
      if (cur[k] < radius) {
        ++cur[k];
        break;
      }
      cur[k] = -radius;
      ++k;
    }
    if (k == n) break;
  }
  sort_lex(out);
  return out;
}

std::vector<SStructure> enumerate_sstructures(const Fan& f, long bound) {
  if (bound < 0) throw stagtor_error("enumerate_sstructures: bound must be >= 0");
  // Candidate values per cone: lattice points of -C within the box. The fan's
  // id order lists faces before the cones they bound, so zero-heredity can be
  // pruned against already-assigned faces.
  std::vector<std::vector<IVec>> candidates(f.size());
  for (int i = 0; i < f.size(); ++i)
    candidates[i] = cone_box_points(negate_cone(f.cone(i)), bound);

  std::vector<std::vector<ConeId>> faces_of(f.size());
  for (auto& [child, parent] : f.face_relation()) faces_of[parent].push_back(child);

  std::vector<SStructure> out;
  SStructure cur;
  std::function<void(int)> rec = [&](int id) {
    if (id == f.size()) {
      out.push_back(cur);
      return;
    }
    for (const IVec& v : candidates[id]) {
      if (is_zero(v)) {
        bool ok = true;
        for (ConeId face : faces_of[id])
          if (!is_zero(cur.at(face))) {
            ok = false;
            break;
          }
        if (!ok) continue;
      }
      cur.assignments[id] = v;
      rec(id + 1);
    }
    cur.assignments.erase(id);
  };
  rec(0);
  return out;
}

}  // namespace stagtor
