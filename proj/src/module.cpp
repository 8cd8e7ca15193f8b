#include "stagtor/module.hpp"

#include <algorithm>
#include <set>

namespace stagtor {

namespace {

// x divides y over S, i.e. y - x is a semigroup element.
bool divides(const ChartSpec& chart, const IVec& x, const IVec& y) {
  return chart.semigroup_contains(IVec(y - x));
}

std::vector<IVec> minimalize(const ChartSpec& chart, std::vector<IVec> gens) {
  // After unit reduction, mutual division implies equality, so plain
  // domination filtering yields the unique minimal generating set.
  for (IVec& g : gens) g = chart.unit_proj().canonical_rep(g);
  sort_lex(gens);
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<IVec> out;
  for (size_t i = 0; i < gens.size(); ++i) {
    bool dominated = false;
    for (size_t j = 0; j < gens.size() && !dominated; ++j)
      if (i != j && divides(chart, gens[j], gens[i])) dominated = true;
    if (!dominated) out.push_back(gens[i]);
  }
  return out;
}

}  // namespace

UpSet make_upset(const ChartSpec& chart, std::vector<IVec> gens) {
  return UpSet{minimalize(chart, std::move(gens))};
}

bool upset_member(const ChartSpec& chart, const UpSet& u, const IVec& x) {
  for (const IVec& g : u.gens)
    if (divides(chart, g, x)) return true;
  return false;
}

UpSet upset_union(const ChartSpec& chart, const UpSet& a, const UpSet& b) {
  std::vector<IVec> gens = a.gens;
  gens.insert(gens.end(), b.gens.begin(), b.gens.end());
  return make_upset(chart, std::move(gens));
}

UpSet upset_intersect(const ChartSpec& chart, const UpSet& a, const UpSet& b) {
  std::vector<IVec> gens;
  const auto& rays = chart.chart_cone().rays();
  for (const IVec& ga : a.gens)
    for (const IVec& gb : b.gens) {
      // (ga + S) cap (gb + S) = ga + {d in S : d + (ga - gb) in S}
      std::vector<std::pair<IVec, Int>> constraints;
      for (const IVec& r : rays) constraints.emplace_back(r, pairing(r, IVec(gb - ga)));
      for (const IVec& d : semigroup_module_mingens(chart, constraints))
        gens.push_back(ga + d);
    }
  return make_upset(chart, std::move(gens));
}

UpSet upset_translate(const ChartSpec& chart, const UpSet& u, const IVec& d) {
  std::vector<IVec> gens;
  for (const IVec& g : u.gens) gens.push_back(g + d);
  return make_upset(chart, std::move(gens));
}

std::vector<IVec> semigroup_module_mingens(const ChartSpec& chart,
                                           const std::vector<std::pair<IVec, Int>>& constraints) {
  // constraints with b <= 0 hold on all of S
  std::vector<std::pair<IVec, Int>> active;
  for (const auto& [v, b] : constraints) {
    if (!chart.chart_cone().contains(v))
      throw stagtor_error("semigroup_module_mingens: constraint functional outside the chart cone");
    if (b > 0) active.emplace_back(v, b);
  }
  if (active.empty()) return {zero_vec(chart.ambient_rank())};

  const auto& hb = chart.semigroup().generators;  // ambient lifts of the pointed part
  const size_t k = hb.size();
  const size_t t = active.size();
  std::vector<std::vector<Int>> coeff(t, std::vector<Int>(k));
  Int maxb = 0;
  for (size_t ti = 0; ti < t; ++ti) {
    bool satisfiable = false;
    for (size_t i = 0; i < k; ++i) {
      coeff[ti][i] = pairing(active[ti].first, hb[i]);
      if (coeff[ti][i] > 0) satisfiable = true;
    }
    if (!satisfiable) return {};  // no element of S meets this bound
    if (active[ti].second > maxb) maxb = active[ti].second;
  }
  // any minimal solution has every exponent bounded by max_t b_t
  long box = maxb.get_si();
  std::vector<long> n(k, 0);
  std::vector<IVec> found;
  while (true) {
    bool ok = true;
    for (size_t ti = 0; ti < t && ok; ++ti) {
      Int sum = 0;
      for (size_t i = 0; i < k; ++i) sum += coeff[ti][i] * n[i];
      if (sum < active[ti].second) ok = false;
    }
    if (ok) {
      IVec x = zero_vec(chart.ambient_rank());
      for (size_t i = 0; i < k; ++i)
        if (n[i]) x += Int(n[i]) * hb[i];
      found.push_back(x);
    }
    size_t i = 0;
    while (i < k && n[i] == box) n[i++] = 0;
    if (i == k) break;
    ++n[i];
  }
  return minimalize(chart, std::move(found));
}

bool MonomialModule::weight_alive(int gen, const IVec& chi) const {
  IVec off = chi - gen_degrees[gen];
  if (!chart->semigroup_contains(off)) return false;
  for (const auto& [g, mu] : relations)
    if (g == gen && chart->semigroup_contains(IVec(off - mu))) return false;
  return true;
}

int MonomialModule::weight_dim(const IVec& chi) const {
  int d = 0;
  for (int i = 0; i < static_cast<int>(gen_degrees.size()); ++i)
    if (weight_alive(i, chi)) ++d;
  return d;
}

MonomialModule make_module(std::shared_ptr<const ChartSpec> chart, std::vector<IVec> gen_degrees,
                           std::vector<std::pair<int, IVec>> relations) {
  MonomialModule m;
  m.chart = std::move(chart);
  m.gen_degrees = std::move(gen_degrees);
  m.relations = std::move(relations);
  for (const auto& [g, mu] : m.relations) {
    if (g < 0 || g >= static_cast<int>(m.gen_degrees.size()))
      throw stagtor_error("make_module: relation names a missing generator");
    if (!m.chart->semigroup_contains(mu))
      throw stagtor_error("make_module: relation degree is not in the chart semigroup");
  }
  return normalize(m);
}

MonomialModule free_module(std::shared_ptr<const ChartSpec> chart, const IVec& degree) {
  return make_module(std::move(chart), {degree}, {});
}

MonomialModule zero_module(std::shared_ptr<const ChartSpec> chart) {
  return make_module(std::move(chart), {}, {});
}

MonomialModule normalize(const MonomialModule& m) {
  const ChartSpec& chart = *m.chart;
  struct GenData {
    IVec degree;
    std::vector<IVec> rels;
  };
  std::vector<GenData> gens;
  for (int i = 0; i < static_cast<int>(m.gen_degrees.size()); ++i) {
    GenData g;
    g.degree = m.gen_degrees[i];
    bool dead = false;
    for (const auto& [gi, mu] : m.relations)
      if (gi == i) {
        if (chart.is_unit(mu)) {
          dead = true;
          break;
        }
        g.rels.push_back(mu);
      }
    if (dead) continue;
    g.rels = minimalize(chart, std::move(g.rels));
    gens.push_back(std::move(g));
  }
  std::sort(gens.begin(), gens.end(), [](const GenData& a, const GenData& b) {
    int c = lex_compare(a.degree, b.degree);
    if (c) return c < 0;
    if (a.rels.size() != b.rels.size()) return a.rels.size() < b.rels.size();
    for (size_t i = 0; i < a.rels.size(); ++i) {
      int rc = lex_compare(a.rels[i], b.rels[i]);
      if (rc) return rc < 0;
    }
    return false;
  });
  MonomialModule out;
  out.chart = m.chart;
  for (int i = 0; i < static_cast<int>(gens.size()); ++i) {
    out.gen_degrees.push_back(gens[i].degree);
    for (const IVec& mu : gens[i].rels) out.relations.emplace_back(i, mu);
  }
  return out;
}

std::vector<std::pair<IVec, int>> supp_query(const MonomialModule& m, const IVec& lo,
                                             const IVec& hi) {
  const Index n = m.chart->ambient_rank();
  if (lo.size() != n || hi.size() != n) throw stagtor_error("supp_query: box rank mismatch");
  std::vector<std::pair<IVec, int>> out;
  IVec cur = lo;
  while (true) {
    int d = m.weight_dim(cur);
    if (d > 0) out.emplace_back(cur, d);
    Index i = 0;
    while (i < n && cur[i] == hi[i]) {
      cur[i] = lo[i];
      ++i;
    }
    if (i == n) break;
    cur[i] += 1;
  }
  return out;
}

std::optional<Int> module_max_level(const MonomialModule& m, const SStructure& a, ConeId c) {
  MonomialModule norm = normalize(m);
  if (norm.is_zero()) return std::nullopt;
  std::optional<Int> best;
  for (const IVec& xi : norm.gen_degrees) {
    Int lvl = pairing(xi, a.at(c));
    if (!best || lvl > *best) best = lvl;
  }
  return best;
}

namespace {

// Dead region of one generator, as an up-set of absolute weights.
UpSet dead_upset(const MonomialModule& m, int gen) {
  std::vector<IVec> gens;
  for (const auto& [g, mu] : m.relations)
    if (g == gen) gens.push_back(m.gen_degrees[gen] + mu);
  return make_upset(*m.chart, std::move(gens));
}

// Presents the submodule spanned by the alive weights inside the per-gen
// up-closed regions (given by their minimal generators inside xi_i + S).
Submodule assemble_submodule(const MonomialModule& m,
                             const std::vector<std::vector<IVec>>& region_mingens) {
  const ChartSpec& chart = *m.chart;
  const auto& rays = chart.chart_cone().rays();
  Submodule out;
  MonomialModule sub;
  sub.chart = m.chart;
  for (int i = 0; i < static_cast<int>(m.gen_degrees.size()); ++i) {
    UpSet dead = dead_upset(m, i);
    std::vector<IVec> gammas;
    for (const IVec& g : region_mingens[i])
      if (!upset_member(chart, dead, g)) gammas.push_back(g);  // dead pieces are empty
    sort_lex(gammas);
    for (size_t k = 0; k < gammas.size(); ++k) {
      int new_gen = static_cast<int>(sub.gen_degrees.size());
      sub.gen_degrees.push_back(gammas[k]);
      out.inclusion.emplace_back(i, gammas[k]);
      auto add_quotient_rels = [&](const IVec& target) {
        // {d in S : gamma_k + d in target + S}
        std::vector<std::pair<IVec, Int>> cons;
        for (const IVec& r : rays) cons.emplace_back(r, pairing(r, IVec(target - gammas[k])));
        for (const IVec& d : semigroup_module_mingens(chart, cons))
          sub.relations.emplace_back(new_gen, d);
      };
      for (const IVec& d : dead.gens) add_quotient_rels(d);
      for (size_t l = 0; l < k; ++l) add_quotient_rels(gammas[l]);
    }
  }
  out.module = normalize(sub);
  return out;
}

// Minimal generators, inside xi_i + S, of the region where every weight
// satisfies <chi, A_D> <= w for all faces D with A_D nonzero.
std::vector<std::vector<IVec>> level_region_mingens(const MonomialModule& m, const SStructure& a,
                                                    const Int& w) {
  const ChartSpec& chart = *m.chart;
  std::vector<std::vector<IVec>> out;
  for (const IVec& xi : m.gen_degrees) {
    std::vector<std::pair<IVec, Int>> cons;
    for (const ChartFace& face : chart.faces()) {
      const IVec& ac = a.at(face.id);
      if (is_zero(ac)) continue;
      cons.emplace_back(IVec(-ac), pairing(xi, ac) - w);
    }
    std::vector<IVec> mins;
    for (const IVec& eta : semigroup_module_mingens(chart, cons)) mins.push_back(xi + eta);
    out.push_back(std::move(mins));
  }
  return out;
}

// Per-generator torsion regions: the stable limit of V <- cap_g (dead cup V) - g
// over the minimal generators g of the radical ideal of Z.
std::vector<std::vector<IVec>> torsion_region_mingens(const MonomialModule& m,
                                                      const SStructure& a) {
  const ChartSpec& chart = *m.chart;
  // minimal faces with A nonzero; I_Z = {s in S : <s, sum of rays of C> >= 1}
  std::vector<const ChartFace*> nonzero;
  for (const ChartFace& face : chart.faces())
    if (!is_zero(a.at(face.id))) nonzero.push_back(&face);
  std::vector<std::vector<IVec>> out(m.gen_degrees.size());
  if (nonzero.empty()) return out;  // Z empty: no torsion

  std::vector<std::pair<IVec, Int>> cons;
  for (const ChartFace* face : nonzero) cons.emplace_back(face->ray_sum, Int(1));
  std::vector<IVec> iz = semigroup_module_mingens(chart, cons);
  if (iz.empty()) throw stagtor_error("i_Z_hat_shriek: radical ideal unexpectedly empty");

  for (int i = 0; i < static_cast<int>(m.gen_degrees.size()); ++i) {
    UpSet dead = dead_upset(m, i);
    UpSet principal = make_upset(chart, {m.gen_degrees[i]});
    // Ascending fixed-point iteration, clipped to xi_i + S throughout: the
    // recursion only ever queries weights inside the generator's orbit, and
    // clipping is what makes the chain stabilize (noetherianity of the orbit).
    UpSet v;  // empty
    while (true) {
      UpSet base = upset_union(chart, dead, v);
      UpSet next = principal;
      for (const IVec& g : iz)
        next = upset_intersect(chart, next, upset_translate(chart, base, IVec(-g)));
      if (next == v) break;
      v = std::move(next);
    }
    out[i] = v.gens;
  }
  return out;
}

std::vector<std::vector<IVec>> sigma_region_mingens(const MonomialModule& m, const SStructure& a,
                                                    const Int& w) {
  std::vector<std::vector<IVec>> level = level_region_mingens(m, a, w);
  if (w >= 0) return level;
  std::vector<std::vector<IVec>> torsion = torsion_region_mingens(m, a);
  const ChartSpec& chart = *m.chart;
  std::vector<std::vector<IVec>> out;
  for (size_t i = 0; i < level.size(); ++i)
    out.push_back(
        upset_intersect(chart, UpSet{level[i]}, UpSet{torsion[i]}).gens);
  return out;
}

}  // namespace

Submodule sigma_prime_le_w(const MonomialModule& m, const SStructure& a, const Int& w) {
  return assemble_submodule(m, level_region_mingens(m, a, w));
}

Submodule i_Z_hat_shriek(const MonomialModule& m, const SStructure& a) {
  return assemble_submodule(m, torsion_region_mingens(m, a));
}

Submodule sigma_le_w(const MonomialModule& m, const SStructure& a, const Int& w) {
  return assemble_submodule(m, sigma_region_mingens(m, a, w));
}

MonomialModule sigma_quotient(const MonomialModule& m, const SStructure& a, const Int& w) {
  std::vector<std::vector<IVec>> regions = sigma_region_mingens(m, a, w);
  MonomialModule q;
  q.chart = m.chart;
  q.gen_degrees = m.gen_degrees;
  q.relations = m.relations;
  for (int i = 0; i < static_cast<int>(m.gen_degrees.size()); ++i)
    for (const IVec& g : regions[i]) q.relations.emplace_back(i, IVec(g - m.gen_degrees[i]));
  return normalize(q);
}

bool verify_S4(const MonomialModule& m, const SStructure& a, const Int& w) {
  MonomialModule mm = normalize(m);
  Submodule sigma = sigma_le_w(mm, a, w);
  MonomialModule q = sigma_quotient(mm, a, w);
  // the quotient must carry no further weight at or below level w
  if (!sigma_le_w(q, a, w).module.is_zero()) return false;
  // the truncation lands in filtration level w; faces with A = 0 contribute
  // level 0 when w >= 0 and restrict the torsion part to zero when w < 0
  const ChartSpec& chart = *mm.chart;
  for (const ChartFace& face : chart.faces()) {
    if (is_zero(a.at(face.id))) continue;
    auto lvl = module_max_level(sigma.module, a, face.id);
    if (lvl && *lvl > w) return false;
  }
  return true;
}

ExtendResult extend_line_bundle(std::shared_ptr<const ChartSpec> chart, const IVec& xi,
                                const SStructure& a, const Int& w) {
  const ChartSpec& c = *chart;
  ConeId top = c.chart_cone_id();
  if (pairing(xi, a.at(top)) > w)
    throw stagtor_error("extend_line_bundle: weight sits above level w on the closed orbit");
  MonomialModule free = free_module(chart, xi);
  ExtendResult out;
  out.module = sigma_prime_le_w(free, a, w).module;
  // unit directions pair to zero with every A_D, so the class of xi survives
  // iff xi itself satisfies all level conditions
  out.class_survives = true;
  for (const ChartFace& face : c.faces()) {
    const IVec& ac = a.at(face.id);
    if (!is_zero(ac) && pairing(xi, ac) > w) out.class_survives = false;
  }
  return out;
}

}  // namespace stagtor
