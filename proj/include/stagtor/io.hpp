#pragma once

#include "stagtor/complexes.hpp"

namespace stagtor {

class parse_error : public stagtor_error {
 public:
  parse_error(const std::string& what, int line)
      : stagtor_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 1;
};

// A parsed bundle: one fan plus named s-structures, PL functions,
// perversities, chart modules, and complexes. Cone ids are the canonical fan
// ids; serialization is deterministic, so parse-serialize-parse is stable.
struct Workspace {
  Index rank = 0;
  Fan fan;
  std::vector<IVec> rays;  // canonical ray list (lex sorted)
  std::map<std::string, SStructure> sstructures;
  std::map<std::string, PLFunction> pls;
  std::map<std::string, Perversity> perversities;
  std::map<std::string, MonomialModule> modules;
  std::map<std::string, PerfectComplex> complexes;

  std::shared_ptr<const ChartSpec> chart(ConeId id) const;

 private:
  mutable std::map<ConeId, std::shared_ptr<const ChartSpec>> chart_cache_;
};

Workspace parse_workspace(const std::string& text);
Workspace load_workspace(const std::string& path);
std::string serialize_workspace(const Workspace& w);
void save_workspace(const Workspace& w, const std::string& path);

}  // namespace stagtor
