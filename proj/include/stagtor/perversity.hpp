#pragma once

#include "stagtor/picard.hpp"

namespace stagtor {

struct Perversity {
  std::map<ConeId, Int> values;

  const Int& at(ConeId id) const {
    auto it = values.find(id);
    if (it == values.end()) throw stagtor_error("Perversity: missing cone id");
    return it->second;
  }
  bool covers(const Fan& f) const {
    for (int i = 0; i < f.size(); ++i)
      if (!values.count(i)) return false;
    return true;
  }
};

struct PervViolation {
  ConeId child, parent;
  std::string what;
};

struct PerversityCheck {
  std::vector<PervViolation> all_pairs;
  std::vector<PervViolation> codim1;
  bool ok() const { return all_pairs.empty() && codim1.empty(); }
};

// Checks 0 <= p(C') - p(C) <= dim(C') + chi(-A_{C'}) - dim(C) - chi(-A_C)
// over all face pairs, and the reduced codimension-one form separately.
PerversityCheck validate_perversity(const Fan& f, const SStructure& a, const PLFunction& chi,
                                    const Perversity& p);

// pbar(C) = -cod(C) + alt(C) - p(C); an involution preserving validity.
Perversity dual_perversity(const Fan& f, const SStructure& a, const PLFunction& chi,
                           const Perversity& p);

// All perversities with p(anchor) = value, enumerated over the codim-1
// constraint graph. Throws if some component cannot be reached from the
// anchor (its values would be unbounded).
std::vector<Perversity> enumerate_perversities(const Fan& f, const SStructure& a,
                                               const PLFunction& chi, ConeId anchor,
                                               const Int& value);

struct SelfDualSolution {
  PLFunction chi;
  Perversity p;
};

struct SelfDualResult {
  enum class Status { found, globally_infeasible, box_infeasible };
  Status status = Status::box_infeasible;
  std::optional<SelfDualSolution> solution;
  std::string reason;
};

// Searches integral PL functions chi with canonical per-cone coordinates
// bounded by `bound` such that dim(C) + chi(-A_C) is even everywhere and
// chi(-A_{C'}) - chi(-A_C) + 1 >= 0 on codim-1 pairs; on success returns
// p(C) = (dim(C) + chi(-A_C)) / 2. Detects the box-independent parity
// obstruction A_C = 0 with dim(C) odd.
SelfDualResult find_selfdual(const Fan& f, const SStructure& a, long bound);

}  // namespace stagtor
