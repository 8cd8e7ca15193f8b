#include "stagtor/cone.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace stagtor {

namespace {

Int floor_div(const Int& a, const Int& b) {
  // b > 0
  Int q = a / b, r = a % b;
  if (r < 0) --q;
  return q;
}

// Canonical column-style Hermite form of the lattice spanned by `basis`.
// Uniqueness makes lattice bases comparable across construction orders.
std::vector<IVec> hnf_basis(const std::vector<IVec>& basis, Index rank) {
  if (basis.empty()) return {};
  IMat m = columns_to_matrix(basis, rank);
  Index c = 0;
  for (Index r = 0; r < rank && c < m.cols(); ++r) {
    Index j0 = -1;
    for (Index j = c; j < m.cols(); ++j)
      if (m(r, j) != 0) {
        j0 = j;
        break;
      }
    if (j0 < 0) continue;
    if (j0 != c) m.col(c).swap(m.col(j0));
    for (Index j = c + 1; j < m.cols(); ++j) {
      while (m(r, j) != 0) {
        Int q = m(r, c) / m(r, j);
        m.col(c) -= q * m.col(j);
        m.col(c).swap(m.col(j));
      }
    }
    if (m(r, c) < 0) m.col(c) = -m.col(c);
    for (Index j = 0; j < c; ++j) {
      Int q = floor_div(m(r, j), m(r, c));
      m.col(j) -= q * m.col(c);
    }
    ++c;
  }
  std::vector<IVec> out;
  for (Index j = 0; j < c; ++j) out.push_back(m.col(j));
  return out;
}

Int det_bareiss(IMat m) {
  const Index n = m.rows();
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      Index p = -1;
      for (Index i = k + 1; i < n; ++i)
        if (m(i, k) != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      m.row(k).swap(m.row(p));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i)
      for (Index j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

Index integer_rank(const std::vector<IVec>& vs, Index rank) {
  if (vs.empty()) return 0;
  return smith_normal_form(columns_to_matrix(vs, rank)).rank;
}

struct DDRay {
  IVec dir;
  std::vector<char> tight;  // aligned with processed inequality list
};

// Pointed double description: generators of {y : <a,y> >= 0, a in ineqs}
// where the ineqs are assumed to have trivial joint kernel.
std::vector<IVec> dd_pointed(const std::vector<IVec>& ineqs, Index d) {
  if (d == 0) return {};
  // initial simplicial subsystem
  std::vector<IVec> base;
  std::vector<Index> base_idx;
  for (Index i = 0; i < static_cast<Index>(ineqs.size()) && static_cast<Index>(base.size()) < d; ++i) {
    base.push_back(ineqs[i]);
    if (integer_rank(base, d) != static_cast<Index>(base.size())) {
      base.pop_back();
    } else {
      base_idx.push_back(i);
    }
  }
  if (static_cast<Index>(base.size()) != d)
    throw stagtor_error("dd_pointed: inequality system is not pointed");

  IMat b(d, d);
  for (Index i = 0; i < d; ++i) b.row(i) = base[i].transpose();
  Int det = det_bareiss(b);
  std::vector<DDRay> rays;
  for (Index j = 0; j < d; ++j) {
    IVec rhs = IVec::Zero(d);
    rhs[j] = det > 0 ? det : -det;
    auto sol = solve_integer(b, rhs);
    if (!sol) throw stagtor_error("dd_pointed: adjugate solve failed");
    DDRay r;
    r.dir = primitive(*sol);
    r.tight.assign(base_idx.size(), 1);
    r.tight[j] = 0;
    rays.push_back(std::move(r));
  }

  std::set<Index> done(base_idx.begin(), base_idx.end());
  for (Index ai = 0; ai < static_cast<Index>(ineqs.size()); ++ai) {
    if (done.count(ai)) continue;
    const IVec& a = ineqs[ai];
    std::vector<Int> val(rays.size());
    std::vector<Index> pos, neg, zero;
    for (size_t r = 0; r < rays.size(); ++r) {
      val[r] = pairing(a, rays[r].dir);
      if (val[r] > 0)
        pos.push_back(r);
      else if (val[r] < 0)
        neg.push_back(r);
      else
        zero.push_back(r);
    }
    if (neg.empty()) {
      for (size_t r = 0; r < rays.size(); ++r) rays[r].tight.push_back(val[r] == 0);
      continue;
    }
    auto adjacent = [&](Index p, Index q) {
      size_t m = rays[p].tight.size();
      std::vector<char> common(m);
      for (size_t t = 0; t < m; ++t) common[t] = rays[p].tight[t] && rays[q].tight[t];
      for (size_t r = 0; r < rays.size(); ++r) {
        if (r == static_cast<size_t>(p) || r == static_cast<size_t>(q)) continue;
        bool superset = true;
        for (size_t t = 0; t < m && superset; ++t)
          if (common[t] && !rays[r].tight[t]) superset = false;
        if (superset) return false;
      }
      return true;
    };
    std::vector<DDRay> next;
    for (Index r : pos) {
      DDRay keep = rays[r];
      keep.tight.push_back(0);
      next.push_back(std::move(keep));
    }
    for (Index r : zero) {
      DDRay keep = rays[r];
      keep.tight.push_back(1);
      next.push_back(std::move(keep));
    }
    for (Index p : pos)
      for (Index q : neg) {
        if (!adjacent(p, q)) continue;
        DDRay w;
        w.dir = primitive(IVec(val[p] * rays[q].dir - val[q] * rays[p].dir));
        w.tight.resize(rays[p].tight.size() + 1);
        for (size_t t = 0; t + 1 < w.tight.size(); ++t)
          w.tight[t] = rays[p].tight[t] && rays[q].tight[t];
        w.tight.back() = 1;
        next.push_back(std::move(w));
      }
    rays = std::move(next);
  }

  std::vector<IVec> out;
  for (auto& r : rays) out.push_back(r.dir);
  sort_lex(out);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::pair<std::vector<IVec>, std::vector<IVec>> dd_from_inequalities(
    const std::vector<IVec>& ineqs, const std::vector<IVec>& eqs, Index rank) {
  std::vector<IVec> all = ineqs;
  for (const IVec& e : eqs) {
    all.push_back(e);
    all.push_back(-e);
  }
  // lineality = joint kernel of every constraint
  std::vector<IVec> lin;
  if (all.empty()) {
    for (Index i = 0; i < rank; ++i) lin.push_back(unit_vec(rank, i));
    return {hnf_basis(lin, rank), {}};
  }
  IMat rows(static_cast<Index>(all.size()), rank);
  for (Index i = 0; i < rows.rows(); ++i) rows.row(i) = all[i].transpose();
  lin = integer_kernel(rows);
  LatticeProjection proj(lin, rank);
  Index d = proj.quotient_rank();
  if (d == 0) return {hnf_basis(lin, rank), {}};

  // constraints descend to the quotient since they vanish on the lineality
  std::vector<IVec> qineqs;
  for (const IVec& a : all) {
    IVec qa(d);
    // <a, section(y)> is linear in y; read coefficients off unit sections
    for (Index j = 0; j < d; ++j) qa[j] = pairing(a, proj.section(unit_vec(d, j)));
    qineqs.push_back(qa);
  }
  std::vector<IVec> qrays = dd_pointed(qineqs, d);
  std::vector<IVec> rays;
  for (const IVec& y : qrays) rays.push_back(primitive(proj.section(y)));
  sort_lex(rays);
  return {hnf_basis(lin, rank), rays};
}

Cone Cone::from_generators(std::vector<IVec> gens, Index rank) {
  for (auto& g : gens)
    if (g.size() != rank) throw stagtor_error("Cone: generator rank mismatch");
  // dual data: C^v = {chi : <g,chi> >= 0}; its lineality is span(C)^perp and
  // its extreme rays are the facet normals of C.
  auto [span_perp, normals] = dd_from_inequalities(gens, {}, rank);
  // canonical form of C itself from its H-representation
  auto [lin, rays] = dd_from_inequalities(normals, span_perp, rank);
  Cone c;
  c.rank_ = rank;
  c.lineality_ = lin;
  c.rays_ = rays;
  c.facet_normals_ = normals;
  c.span_perp_ = span_perp;
  c.dim_ = rank - static_cast<Index>(span_perp.size());
  return c;
}

Cone Cone::from_inequalities(const std::vector<IVec>& ineqs, const std::vector<IVec>& eqs,
                             Index rank) {
  auto [lin, rays] = dd_from_inequalities(ineqs, eqs, rank);
  std::vector<IVec> gens = rays;
  for (const IVec& l : lin) {
    gens.push_back(l);
    gens.push_back(-l);
  }
  return from_generators(std::move(gens), rank);
}

Cone Cone::zero_cone(Index rank) { return from_generators({}, rank); }

std::vector<IVec> Cone::generators() const {
  std::vector<IVec> g = rays_;
  for (const IVec& l : lineality_) {
    g.push_back(l);
    g.push_back(-l);
  }
  return g;
}

bool Cone::contains(const IVec& v) const {
  for (const IVec& h : facet_normals_)
    if (pairing(h, v) < 0) return false;
  for (const IVec& e : span_perp_)
    if (pairing(e, v) != 0) return false;
  return true;
}

bool Cone::contains(const Cone& other) const {
  for (const IVec& g : other.generators())
    if (!contains(g)) return false;
  return true;
}

bool Cone::contains_in_relative_interior(const IVec& v) const {
  for (const IVec& h : facet_normals_)
    if (pairing(h, v) <= 0) return false;
  for (const IVec& e : span_perp_)
    if (pairing(e, v) != 0) return false;
  return true;
}

bool Cone::lex_less(const Cone& b) const {
  if (dim_ != b.dim_) return dim_ < b.dim_;
  if (rays_.size() != b.rays_.size()) return rays_.size() < b.rays_.size();
  for (size_t i = 0; i < rays_.size(); ++i) {
    int c = lex_compare(rays_[i], b.rays_[i]);
    if (c) return c < 0;
  }
  if (lineality_.size() != b.lineality_.size()) return lineality_.size() < b.lineality_.size();
  for (size_t i = 0; i < lineality_.size(); ++i) {
    int c = lex_compare(lineality_[i], b.lineality_[i]);
    if (c) return c < 0;
  }
  return false;
}

Cone dual_cone(const Cone& c) {
  std::vector<IVec> gens = c.facet_normals();
  for (const IVec& e : c.span_perp()) {
    gens.push_back(e);
    gens.push_back(-e);
  }
  return Cone::from_generators(std::move(gens), c.ambient_rank());
}

Cone negate_cone(const Cone& c) {
  std::vector<IVec> gens;
  for (const IVec& g : c.generators()) gens.push_back(-g);
  return Cone::from_generators(std::move(gens), c.ambient_rank());
}

Cone intersect_cones(const Cone& a, const Cone& b) {
  if (a.ambient_rank() != b.ambient_rank())
    throw stagtor_error("intersect_cones: rank mismatch");
  std::vector<IVec> ineqs = a.facet_normals();
  ineqs.insert(ineqs.end(), b.facet_normals().begin(), b.facet_normals().end());
  std::vector<IVec> eqs = a.span_perp();
  eqs.insert(eqs.end(), b.span_perp().begin(), b.span_perp().end());
  return Cone::from_inequalities(ineqs, eqs, a.ambient_rank());
}

std::vector<Cone> faces(const Cone& c) {
  if (!c.is_strongly_convex()) throw stagtor_error("faces: cone has lineality");
  // Faces of a pointed cone are generated by the ray subsets cut out by
  // iterated facet intersections.
  std::set<std::vector<IVec>, decltype([](const std::vector<IVec>& a,
                                          const std::vector<IVec>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
      int cmp = lex_compare(a[i], b[i]);
      if (cmp) return cmp < 0;
    }
    return false;
  })>
      seen;
  std::vector<std::vector<IVec>> queue{c.rays()};
  seen.insert(c.rays());
  std::vector<Cone> out;
  while (!queue.empty()) {
    std::vector<IVec> rs = std::move(queue.back());
    queue.pop_back();
    out.push_back(Cone::from_generators(rs, c.ambient_rank()));
    for (const IVec& h : c.facet_normals()) {
      std::vector<IVec> sub;
      for (const IVec& r : rs)
        if (pairing(h, r) == 0) sub.push_back(r);
      if (sub.size() == rs.size()) continue;
      if (seen.insert(sub).second) queue.push_back(sub);
    }
  }
  std::sort(out.begin(), out.end(), [](const Cone& a, const Cone& b) { return a.lex_less(b); });
  return out;
}

Cone minimal_face_containing(const Cone& c, const IVec& v) {
  if (!c.contains(v)) throw stagtor_error("minimal_face_containing: vector not in cone");
  std::vector<IVec> tight;
  for (const IVec& h : c.facet_normals())
    if (pairing(h, v) == 0) tight.push_back(h);
  std::vector<IVec> rs;
  for (const IVec& r : c.rays()) {
    bool ok = true;
    for (const IVec& h : tight)
      if (pairing(h, r) != 0) {
        ok = false;
        break;
      }
    if (ok) rs.push_back(r);
  }
  for (const IVec& l : c.lineality()) {
    rs.push_back(l);
    rs.push_back(-l);
  }
  return Cone::from_generators(rs, c.ambient_rank());
}

bool is_face_of(const Cone& f, const Cone& c) {
  if (f.ambient_rank() != c.ambient_rank()) return false;
  if (!c.contains(f)) return false;
  IVec probe = zero_vec(c.ambient_rank());
  for (const IVec& r : f.rays()) probe += r;
  return minimal_face_containing(c, probe) == f;
}

namespace {

// Lattice points of the half-open parallelepiped spanned by an independent
// set, in ambient coordinates.
std::vector<IVec> parallelepiped_points(const std::vector<IVec>& gens, Index rank) {
  const Index s = static_cast<Index>(gens.size());
  std::vector<IVec> span_basis = saturate_span(gens, rank);
  if (static_cast<Index>(span_basis.size()) != s)
    throw stagtor_error("parallelepiped_points: generators not independent");
  IMat b = columns_to_matrix(span_basis, rank);
  IMat m(s, s);
  for (Index j = 0; j < s; ++j) {
    auto x = solve_integer(b, gens[j]);
    if (!x) throw stagtor_error("parallelepiped_points: span solve failed");
    m.col(j) = *x;
  }
  Int det = det_bareiss(m);
  // adjugate columns via M * adj_j = det * e_j
  IMat adj(s, s);
  for (Index j = 0; j < s; ++j) {
    IVec rhs = IVec::Zero(s);
    rhs[j] = det;
    auto col = solve_integer(m, rhs);
    if (!col) throw stagtor_error("parallelepiped_points: adjugate solve failed");
    adj.col(j) = *col;
  }
  std::vector<Int> lo(s, 0), hi(s, 0);
  for (Index r = 0; r < s; ++r)
    for (Index j = 0; j < s; ++j) {
      if (m(r, j) < 0) lo[r] += m(r, j);
      if (m(r, j) > 0) hi[r] += m(r, j);
    }
  std::vector<IVec> out;
  IVec y(s);
  std::vector<Int> cur(s);
  for (Index i = 0; i < s; ++i) cur[i] = lo[i];
  while (true) {
    for (Index i = 0; i < s; ++i) y[i] = cur[i];
    // need 0 <= (adj*y)_i / det < 1 for every i
    bool inside = true;
    for (Index i = 0; i < s && inside; ++i) {
      Int a = 0;
      for (Index j = 0; j < s; ++j) a += adj(i, j) * y[j];
      if (det > 0)
        inside = (a >= 0 && a < det);
      else
        inside = (a <= 0 && a > det);
    }
    if (inside) out.push_back(b * y);
    Index k = 0;
    while (k < s) {
      if (cur[k] < hi[k]) {
        ++cur[k];
        break;
      }
      cur[k] = lo[k];
      ++k;
    }
    if (k == s) break;
  }
  return out;
}

// Hilbert basis of a pointed full-dimensional cone in Z^d.
std::vector<IVec> hilbert_pointed_fulldim(const Cone& c) {
  const Index d = c.ambient_rank();
  const auto& rays = c.rays();
  const Index k = static_cast<Index>(rays.size());
  std::set<IVec, LexLess> cand(rays.begin(), rays.end());
  // Caratheodory: every lattice point lies in the subcone of an independent
  // subset, so the parallelepiped points of those subsets generate.
  std::vector<Index> pick;
  auto scan = [&](auto&& self, Index start) -> void {
    if (pick.size() >= 2) {
      std::vector<IVec> sub;
      for (Index i : pick) sub.push_back(rays[i]);
      if (integer_rank(sub, d) == static_cast<Index>(sub.size())) {
        for (IVec& p : parallelepiped_points(sub, d))
          if (!is_zero(p)) cand.insert(p);
      } else {
        return;  // dependent: no superset is independent either? not true; prune only exact level
      }
    }
    if (static_cast<Index>(pick.size()) == d) return;
    for (Index i = start; i < k; ++i) {
      pick.push_back(i);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  scan(scan, 0);

  std::vector<IVec> gens(cand.begin(), cand.end());
  std::vector<IVec> basis;
  for (const IVec& h : gens) {
    bool irreducible = true;
    for (const IVec& g : gens) {
      if (g == h) continue;
      IVec rest = h - g;
      if (!is_zero(rest) && c.contains(rest)) {
        irreducible = false;
        break;
      }
    }
    if (irreducible) basis.push_back(h);
  }
  return basis;
}

}  // namespace

HilbertData hilbert_basis(const Cone& c) {
  HilbertData out;
  out.units = c.lineality();
  if (!c.lineality().empty()) {
    LatticeProjection proj(c.lineality(), c.ambient_rank());
    std::vector<IVec> qrays;
    for (const IVec& r : c.rays()) qrays.push_back(primitive(proj.project(r)));
    Cone q = Cone::from_generators(qrays, proj.quotient_rank());
    HilbertData sub = hilbert_basis(q);
    for (const IVec& g : sub.generators) out.generators.push_back(proj.section(g));
    sort_lex(out.generators);
    return out;
  }
  if (c.dim() == 0) return out;
  if (c.dim() < c.ambient_rank()) {
    std::vector<IVec> span_basis = saturate_span(c.rays(), c.ambient_rank());
    IMat b = columns_to_matrix(span_basis, c.ambient_rank());
    std::vector<IVec> coords;
    for (const IVec& r : c.rays()) {
      auto x = solve_integer(b, r);
      if (!x) throw stagtor_error("hilbert_basis: span solve failed");
      coords.push_back(*x);
    }
    Cone q = Cone::from_generators(coords, c.dim());
    for (const IVec& g : hilbert_pointed_fulldim(q)) out.generators.push_back(b * g);
    sort_lex(out.generators);
    return out;
  }
  out.generators = hilbert_pointed_fulldim(c);
  sort_lex(out.generators);
  return out;
}

}  // namespace stagtor
