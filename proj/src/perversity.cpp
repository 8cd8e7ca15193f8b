#include "stagtor/perversity.hpp"

#include <functional>

namespace stagtor {

namespace {

Int staggered_dim(const Fan& f, const SStructure& a, const PLFunction& chi, ConeId c) {
  return Int(f.cone(c).dim()) + altitude(f, a, chi, c);
}

}  // namespace

PerversityCheck validate_perversity(const Fan& f, const SStructure& a, const PLFunction& chi,
                                    const Perversity& p) {
  if (!p.covers(f)) throw stagtor_error("validate_perversity: missing cone id");
  PerversityCheck out;
  for (auto& [child, parent] : f.face_relation()) {
    Int delta = p.at(parent) - p.at(child);
    Int gap = staggered_dim(f, a, chi, parent) - staggered_dim(f, a, chi, child);
    if (delta < 0 || delta > gap)
      out.all_pairs.push_back({child, parent,
                               "p(" + std::to_string(parent) + ") - p(" + std::to_string(child) +
                                   ") = " + delta.get_str() + " outside [0, " + gap.get_str() +
                                   "]"});
  }
  for (auto& [child, parent] : f.codim1_pairs()) {
    Int delta = p.at(parent) - p.at(child);
    Int gap = 1 + altitude(f, a, chi, parent) - altitude(f, a, chi, child);
    if (delta < 0 || delta > gap)
      out.codim1.push_back({child, parent,
                            "codim-1: p(" + std::to_string(parent) + ") - p(" +
                                std::to_string(child) + ") = " + delta.get_str() +
                                " outside [0, " + gap.get_str() + "]"});
  }
  return out;
}

Perversity dual_perversity(const Fan& f, const SStructure& a, const PLFunction& chi,
                           const Perversity& p) {
  Perversity out;
  for (int c = 0; c < f.size(); ++c)
    out.values[c] = -Int(f.cone(c).codim()) + altitude(f, a, chi, c) - p.at(c);
  return out;
}

std::vector<Perversity> enumerate_perversities(const Fan& f, const SStructure& a,
                                               const PLFunction& chi, ConeId anchor,
                                               const Int& value) {
  f.cone(anchor);  // bounds check
  // adjacency over codim-1 pairs
  std::vector<std::vector<std::pair<ConeId, int>>> adj(f.size());  // (other, +1 if other=parent)
  for (auto& [child, parent] : f.codim1_pairs()) {
    adj[child].emplace_back(parent, +1);
    adj[parent].emplace_back(child, -1);
  }
  // BFS order from the anchor
  std::vector<int> order;
  std::vector<char> seen(f.size(), 0);
  order.push_back(anchor);
  seen[anchor] = 1;
  for (size_t head = 0; head < order.size(); ++head)
    for (auto& [next, dir] : adj[order[head]])
      if (!seen[next]) {
        seen[next] = 1;
        order.push_back(next);
      }
  for (int c = 0; c < f.size(); ++c)
    if (!seen[c])
      throw stagtor_error(
          "enumerate_perversities: cone " + std::to_string(c) +
          " is not connected to the anchor through codim-1 pairs; its values are unbounded");

  auto gap = [&](ConeId child, ConeId parent) -> Int {
    return Int(1) + altitude(f, a, chi, parent) - altitude(f, a, chi, child);
  };

  std::vector<Perversity> out;
  Perversity cur;
  std::function<void(size_t)> rec = [&](size_t k) {
    if (k == order.size()) {
      out.push_back(cur);
      return;
    }
    ConeId c = order[k];
    bool bounded = false;
    Int lo = 0, hi = 0;
    if (k == 0) {
      lo = hi = value;
      bounded = true;
    }
    for (auto& [other, dir] : adj[c]) {
      auto it = cur.values.find(other);
      if (it == cur.values.end()) continue;
      // dir=+1: other is a parent: p(other) - p(c) in [0, gap(c, other)]
      Int l = dir > 0 ? it->second - gap(c, other) : it->second;
      Int h = dir > 0 ? it->second : it->second + gap(other, c);
      if (!bounded) {
        lo = l;
        hi = h;
        bounded = true;
      } else {
        if (l > lo) lo = l;
        if (h < hi) hi = h;
      }
    }
    if (!bounded) throw stagtor_error("enumerate_perversities: internal ordering error");
    for (Int v = lo; v <= hi; ++v) {
      cur.values[c] = v;
      rec(k + 1);
    }
    cur.values.erase(c);
  };
  rec(0);
  std::sort(out.begin(), out.end(), [&](const Perversity& x, const Perversity& y) {
    for (int c = 0; c < f.size(); ++c) {
      if (x.at(c) != y.at(c)) return x.at(c) < y.at(c);
    }
    return false;
  });
  return out;
}

SelfDualResult find_selfdual(const Fan& f, const SStructure& a, long bound) {
  SelfDualResult result;
  // Box-independent obstruction: A_C = 0 forces chi(-A_C) = 0, so dim(C)
  // must be even wherever A vanishes.
  for (int c = 0; c < f.size(); ++c)
    if (is_zero(a.at(c)) && f.cone(c).dim() % 2 == 1) {
      result.status = SelfDualResult::Status::globally_infeasible;
      result.reason = "parity obstruction: A = 0 on cone " + std::to_string(c) +
                      " of odd dimension " + std::to_string(f.cone(c).dim()) +
                      ", so dim(C) + chi(-A_C) is odd for every chi";
      return result;
    }

  // Candidate covectors per cone: canonical representatives modulo L_C with
  // quotient coordinates in the box, smallest magnitudes first.
  std::vector<LatticeProjection> proj(f.size());
  for (int c = 0; c < f.size(); ++c) {
    const Cone& cone = f.cone(c);
    std::vector<IVec> l_basis;
    if (cone.rays().empty()) {
      for (Index i = 0; i < f.ambient_rank(); ++i) l_basis.push_back(unit_vec(f.ambient_rank(), i));
    } else {
      IMat rows(static_cast<Index>(cone.rays().size()), f.ambient_rank());
      for (size_t r = 0; r < cone.rays().size(); ++r)
        rows.row(static_cast<Index>(r)) = cone.rays()[r].transpose();
      l_basis = integer_kernel(rows);
    }
    proj[c] = LatticeProjection(l_basis, f.ambient_rank());
  }
  std::vector<long> ladder;  // 0, 1, -1, 2, -2, ...
  ladder.push_back(0);
  for (long v = 1; v <= bound; ++v) {
    ladder.push_back(v);
    ladder.push_back(-v);
  }

  std::vector<std::vector<ConeId>> faces_of(f.size());
  for (auto& [child, parent] : f.face_relation()) faces_of[parent].push_back(child);
  std::vector<std::vector<ConeId>> codim1_children(f.size());
  for (auto& [child, parent] : f.codim1_pairs()) codim1_children[parent].push_back(child);

  PLFunction chi;
  std::map<ConeId, Int> alt_value;
  std::function<bool(int)> rec = [&](int c) -> bool {
    if (c == f.size()) return true;
    const Cone& cone = f.cone(c);
    Index q = proj[c].quotient_rank();
    std::vector<size_t> odo(q, 0);
    while (true) {
      IVec y(q);
      for (Index i = 0; i < q; ++i) y[i] = ladder[odo[i]];
      IVec cand = proj[c].section(y);
      Int alt = pairing(cand, IVec(-a.at(c)));
      bool ok = (Int(cone.dim()) + alt) % 2 == 0;
      if (ok)
        for (ConeId face : faces_of[c]) {
          IVec diff = cand - chi.at(face);
          for (const IVec& r : f.cone(face).rays())
            if (pairing(diff, r) != 0) {
              ok = false;
              break;
            }
          if (!ok) break;
        }
      if (ok)
        for (ConeId child : codim1_children[c])
          if (alt - alt_value.at(child) + 1 < 0) {
            ok = false;
            break;
          }
      if (ok) {
        chi.per_cone[c] = cand;
        alt_value[c] = alt;
        if (rec(c + 1)) return true;
        chi.per_cone.erase(c);
        alt_value.erase(c);
      }
      // advance odometer
      Index k = 0;
      while (k < q && odo[k] + 1 == ladder.size()) odo[k++] = 0;
      if (k == q) break;
      ++odo[k];
    }
    return false;
  };

  if (f.size() > 0 && rec(0)) {
    SelfDualSolution sol;
    sol.chi = chi;
    for (int c = 0; c < f.size(); ++c) {
      Int sd = Int(f.cone(c).dim()) + alt_value.at(c);
      sol.p.values[c] = sd / 2;
    }
    auto check = validate_perversity(f, a, sol.chi, sol.p);
    if (!check.ok()) throw stagtor_error("find_selfdual: produced an invalid perversity");
    result.status = SelfDualResult::Status::found;
    result.solution = std::move(sol);
    return result;
  }
  result.status = SelfDualResult::Status::box_infeasible;
  result.reason = "no piecewise-linear witness with quotient coordinates bounded by " +
                  std::to_string(bound) + "; larger boxes may still contain one";
  return result;
}

}  // namespace stagtor
