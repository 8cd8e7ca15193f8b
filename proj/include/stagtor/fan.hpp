#pragma once

#include <map>
#include <memory>
#include <string>

#include "stagtor/cone.hpp"

namespace stagtor {

using ConeId = int;

struct FanViolation {
  std::string what;
};

// A fan as an indexed family of cones with precomputed face data. Cone ids
// are indices into a deterministic ordering (by dimension, then lex on the
// canonical ray lists), so identical inputs always yield identical ids.
class Fan {
 public:
  static Fan from_cones(std::vector<Cone> cones, Index rank);
  // Closes the given cones under faces first (dedup) and then builds the fan.
  static Fan closure_of(const std::vector<Cone>& maximal, Index rank);

  Index ambient_rank() const { return rank_; }
  int size() const { return static_cast<int>(cones_.size()); }
  const Cone& cone(ConeId id) const;
  const std::vector<Cone>& cones() const { return cones_; }

  std::optional<ConeId> find(const Cone& c) const;
  ConeId require(const Cone& c) const;

  // (child, parent) for every strict face pair; reflexive pairs omitted.
  const std::vector<std::pair<ConeId, ConeId>>& face_relation() const { return face_rel_; }
  const std::vector<std::pair<ConeId, ConeId>>& codim1_pairs() const { return codim1_; }
  const std::vector<ConeId>& maximal_cones() const { return maximal_; }
  bool is_face_pair(ConeId child, ConeId parent) const;

  // Ids of the faces of `id` present in the fan, including id itself.
  std::vector<ConeId> face_ids_of(ConeId id) const;

 private:
  Index rank_ = 0;
  std::vector<Cone> cones_;
  std::vector<std::pair<ConeId, ConeId>> face_rel_;
  std::vector<std::pair<ConeId, ConeId>> codim1_;
  std::vector<ConeId> maximal_;
};

std::vector<FanViolation> validate_fan(const Fan& f);

// Standard fans: affine_space(n), torus(n), projective_space(n), p1_x_p1,
// hirzebruch(a), quadric_cone, blowup_A2.
Fan builtin_fan(const std::string& name, long param = 0);

// All cones having `id` as a face (the star of the cone), id included.
std::vector<ConeId> star_cones(const Fan& f, ConeId id);

// The fan of the orbit closure of `id`: images of the star cones in the
// quotient lattice by span(cone(id)).
Fan star_quotient_fan(const Fan& f, ConeId id);

// Per-face data of the affine chart of a cone D: the semigroup S = D^v ∩ M
// and, for each face C of D, the lattice L_C = C^perp ∩ M with its
// projection (weight classes on the orbit of C live in M / L_C).
struct ChartFace {
  ConeId id = -1;                // id in the ambient fan
  Cone cone;                     // the face itself
  std::vector<IVec> l_basis;     // basis of L_C = C^perp ∩ M
  LatticeProjection class_proj;  // M -> M / L_C
  IVec ray_sum;                  // sum of the primitive rays of the face
};

class ChartSpec {
 public:
  ChartSpec() = default;

  Index ambient_rank() const { return rank_; }
  ConeId chart_cone_id() const { return chart_id_; }
  const Cone& chart_cone() const { return chart_cone_; }
  const Cone& dual() const { return dual_; }

  const HilbertData& semigroup() const { return semigroup_; }
  // Hilbert basis of the pointed quotient of S, in quotient coordinates.
  const std::vector<IVec>& pointed_generators() const { return pointed_gens_; }
  const LatticeProjection& unit_proj() const { return unit_proj_; }

  const std::vector<ChartFace>& faces() const { return faces_; }
  const ChartFace& face(ConeId id) const;
  const ChartFace& closed_face() const { return face(chart_id_); }

  bool semigroup_contains(const IVec& s) const { return dual_.contains(s); }
  bool is_unit(const IVec& s) const { return semigroup_contains(s) && semigroup_contains(IVec(-s)); }

  friend ChartSpec chart_spec(const Fan& f, ConeId id);

 private:
  Index rank_ = 0;
  ConeId chart_id_ = -1;
  Cone chart_cone_;
  Cone dual_;
  HilbertData semigroup_;
  std::vector<IVec> pointed_gens_;
  LatticeProjection unit_proj_;
  std::vector<ChartFace> faces_;
};

ChartSpec chart_spec(const Fan& f, ConeId id);

}  // namespace stagtor
