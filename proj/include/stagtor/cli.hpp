#pragma once

#include <iostream>

#include "stagtor/io.hpp"

namespace stagtor {

// Exit codes: 0 success, 1 semantic violation, 2 parse/reference/usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Deterministic SVG of a rank-2 fan, annotated with A_C arrows and p values.
std::string render_svg(const Workspace& w, const SStructure* a, const Perversity* p);

}  // namespace stagtor
