#include "stagtor/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

namespace stagtor {

namespace {

const SStructure& pick_sstructure(const Workspace& w, const std::string& name) {
  auto it = w.sstructures.find(name);
  if (it == w.sstructures.end()) throw stagtor_error("no SSTRUCTURE named '" + name + "'");
  return it->second;
}

const Perversity& pick_perversity(const Workspace& w, const std::string& name) {
  auto it = w.perversities.find(name);
  if (it == w.perversities.end()) throw stagtor_error("no PERVERSITY named '" + name + "'");
  return it->second;
}

PLFunction pick_pl(const Workspace& w, const std::string& name) {
  if (name.empty()) return zero_pl(w.fan);
  auto it = w.pls.find(name);
  if (it == w.pls.end()) throw stagtor_error("no PL named '" + name + "'");
  return it->second;
}

std::string cone_label(const Workspace& w, ConeId id) {
  const Cone& c = w.fan.cone(id);
  std::string s = std::to_string(id) + ":dim" + std::to_string(c.dim());
  return s;
}

int cmd_validate(const Workspace& w, std::ostream& out) {
  int bad = 0;
  auto fan_violations = validate_fan(w.fan);
  out << "fan: " << (fan_violations.empty() ? "ok" : "INVALID") << "\n";
  for (auto& v : fan_violations) {
    out << "  " << v.what << "\n";
    ++bad;
  }
  for (auto& [name, a] : w.sstructures) {
    auto vs = validate_sstructure(w.fan, a);
    out << "sstructure " << name << ": " << (vs.empty() ? "ok" : "INVALID") << "\n";
    for (auto& v : vs) {
      out << "  cone " << v.cone << ": " << v.what << "\n";
      ++bad;
    }
  }
  for (auto& [name, chi] : w.pls) {
    auto vs = validate_pl(w.fan, chi);
    out << "pl " << name << ": " << (vs.empty() ? "ok" : "INVALID") << "\n";
    for (auto& v : vs) {
      out << "  cones " << v.child << " <= " << v.parent << ": " << v.what << "\n";
      ++bad;
    }
  }
  for (auto& [name, p] : w.perversities) {
    // validated against every s-structure/PL pair named in the file, or the
    // trivial pair when none is present
    if (w.sstructures.empty()) {
      SStructure a;
      for (int i = 0; i < w.fan.size(); ++i) a.assignments[i] = zero_vec(w.rank);
      auto check = validate_perversity(w.fan, a, zero_pl(w.fan), p);
      out << "perversity " << name << " (trivial A, chi): "
          << (check.ok() ? "ok" : "INVALID") << "\n";
      if (!check.ok()) ++bad;
      for (auto& v : check.all_pairs) out << "  " << v.what << "\n";
    }
    for (auto& [aname, a] : w.sstructures) {
      for (auto& [cname, chi] : w.pls) {
        auto check = validate_perversity(w.fan, a, chi, p);
        out << "perversity " << name << " (A=" << aname << ", chi=" << cname
            << "): " << (check.ok() ? "ok" : "INVALID") << "\n";
        if (!check.ok()) ++bad;
        for (auto& v : check.all_pairs) out << "  " << v.what << "\n";
      }
      if (w.pls.empty()) {
        auto check = validate_perversity(w.fan, a, zero_pl(w.fan), p);
        out << "perversity " << name << " (A=" << aname << ", chi=0): "
            << (check.ok() ? "ok" : "INVALID") << "\n";
        if (!check.ok()) ++bad;
        for (auto& v : check.all_pairs) out << "  " << v.what << "\n";
      }
    }
  }
  for (auto& [name, m] : w.modules) {
    // construction already checked the relation degrees; report shape
    out << "module " << name << ": ok (" << m.gen_degrees.size() << " generators, "
        << m.relations.size() << " relations)\n";
  }
  for (auto& [name, f] : w.complexes) {
    auto vs = validate_complex(f);
    out << "complex " << name << ": " << (vs.empty() ? "ok" : "INVALID") << "\n";
    for (auto& v : vs) {
      out << "  " << v.what << "\n";
      ++bad;
    }
  }
  return bad == 0 ? 0 : 1;
}

int cmd_enumerate(const Workspace& w, const std::string& what, long bound,
                  const std::string& aname, const std::string& cname, const std::string& anchor,
                  bool list, std::ostream& out) {
  constexpr size_t kListCap = 10000;
  if (what == "sstructures") {
    auto all = enumerate_sstructures(w.fan, bound);
    out << "sstructures with bound " << bound << ": " << all.size() << "\n";
    if (list && all.size() <= kListCap) {
      for (size_t i = 0; i < all.size(); ++i) {
        out << i << ":";
        for (auto& [id, v] : all[i].assignments) out << " " << id << "=" << to_string(v);
        out << "\n";
      }
    } else if (list) {
      out << "listing suppressed above " << kListCap << " items\n";
    }
    return 0;
  }
  if (what == "perversities") {
    const SStructure& a = pick_sstructure(w, aname);
    PLFunction chi = pick_pl(w, cname);
    ConeId anchor_id = 0;
    Int anchor_val = 0;
    if (!anchor.empty()) {
      auto eq = anchor.find('=');
      if (eq == std::string::npos) throw stagtor_error("--anchor expects CONE=VALUE");
      anchor_id = std::stoi(anchor.substr(0, eq));
      anchor_val = Int(anchor.substr(eq + 1));
    }
    auto all = enumerate_perversities(w.fan, a, chi, anchor_id, anchor_val);
    out << "perversities with p(" << anchor_id << ") = " << anchor_val.get_str() << ": "
        << all.size() << "\n";
    if (list && all.size() <= kListCap) {
      for (size_t i = 0; i < all.size(); ++i) {
        out << i << ":";
        for (auto& [id, v] : all[i].values) out << " " << id << "=" << v.get_str();
        out << "\n";
      }
    } else if (list) {
      out << "listing suppressed above " << kListCap << " items\n";
    }
    return 0;
  }
  throw stagtor_error("--what must be sstructures or perversities");
}

int cmd_selfdual(const Workspace& w, const std::string& aname, long bound,
                 const std::string& output, std::ostream& out) {
  const SStructure& a = pick_sstructure(w, aname);
  SelfDualResult r = find_selfdual(w.fan, a, bound);
  if (r.status == SelfDualResult::Status::globally_infeasible) {
    out << "globally infeasible: " << r.reason << "\n";
    return 1;
  }
  if (r.status == SelfDualResult::Status::box_infeasible) {
    out << "infeasible within the box: " << r.reason << "\n";
    return 1;
  }
  out << "self-dual witness found\n";
  for (int c = 0; c < w.fan.size(); ++c) {
    out << "cone " << cone_label(w, c) << " chi=" << to_string(r.solution->chi.at(c))
        << " chi(-A)=" << altitude(w.fan, a, r.solution->chi, c).get_str()
        << " p=" << r.solution->p.at(c).get_str() << "\n";
  }
  if (!output.empty()) {
    Workspace copy = w;
    copy.pls["selfdual_chi"] = r.solution->chi;
    copy.perversities["selfdual_p"] = r.solution->p;
    save_workspace(copy, output);
    out << "witness written to " << output << "\n";
  }
  return 0;
}

int cmd_membership(const Workspace& w, const std::vector<std::string>& complex_names,
                   const std::string& aname, const std::string& pname, const std::string& cname,
                   std::ostream& out) {
  const SStructure& a = pick_sstructure(w, aname);
  const Perversity& p = pick_perversity(w, pname);
  PLFunction chi = pick_pl(w, cname);
  CanonicalData canon = canonical_data(w.fan);
  auto pcheck = validate_perversity(w.fan, a, chi, p);
  if (!pcheck.ok())
    out << "warning: p is not a perversity for this (A, chi); verdicts describe the raw "
           "inequalities only\n";
  int rc = 0;
  for (const std::string& name : complex_names) {
    auto it = w.complexes.find(name);
    if (it == w.complexes.end()) throw stagtor_error("no COMPLEX named '" + name + "'");
    const PerfectComplex& f = it->second;
    out << "complex " << name << " on chart " << f.chart->chart_cone_id() << "\n";
    auto print_rows = [&](const MembershipResult& r, const char* tag) {
      for (const MembershipRow& row : r.rows)
        out << "  " << tag << " cone " << row.cone << " k=" << row.k
            << " class=" << to_string(row.class_rep) << " level=" << row.level.get_str()
            << " bound=" << row.bound.get_str() << " " << (row.pass ? "pass" : "FAIL") << "\n";
    };
    MembershipResult le = in_D_le0(f, a, p);
    print_rows(le, "D<=0");
    bool heart = false;
    try {
      MembershipResult ge = in_D_ge0(f, a, p, chi, canon);
      print_rows(ge, "D>=0");
      heart = le.ok && ge.ok;
      out << "verdict " << name << ": D<=0 " << (le.ok ? "yes" : "no") << ", D>=0 "
          << (ge.ok ? "yes" : "no") << ", heart " << (heart ? "yes" : "no") << "\n";
      if (!le.ok || !ge.ok) rc = 1;
    } catch (const non_gorenstein_error& e) {
      out << "verdict " << name << ": D<=0 " << (le.ok ? "yes" : "no")
          << ", D>=0 refused (" << e.what() << ")\n";
      rc = 1;
    }
  }
  return rc;
}

int cmd_truncate(const Workspace& w, const std::string& mname, const std::string& aname, long wlev,
                 const std::string& output, std::ostream& out) {
  auto it = w.modules.find(mname);
  if (it == w.modules.end()) throw stagtor_error("no MODULE named '" + mname + "'");
  const SStructure& a = pick_sstructure(w, aname);
  Submodule sigma = sigma_le_w(it->second, a, Int(wlev));
  out << "sigma_le_" << wlev << " of " << mname << ": " << sigma.module.gen_degrees.size()
      << " generators, " << sigma.module.relations.size() << " relations\n";
  for (auto& [src, deg] : sigma.inclusion)
    out << "  generator " << to_string(deg) << " inside ambient generator " << src << "\n";
  bool s4 = verify_S4(it->second, a, Int(wlev));
  out << "S4 at w = " << wlev << ": " << (s4 ? "ok" : "FAILED") << "\n";
  if (!output.empty()) {
    Workspace copy = w;
    copy.modules[mname + "_sigma"] = sigma.module;
    save_workspace(copy, output);
    out << "truncation written to " << output << "\n";
  }
  return s4 ? 0 : 1;
}

int cmd_svg(const Workspace& w, const std::string& aname, const std::string& pname,
            const std::string& output, std::ostream& out) {
  const SStructure* a = nullptr;
  const Perversity* p = nullptr;
  if (!aname.empty()) a = &pick_sstructure(w, aname);
  if (!pname.empty()) p = &pick_perversity(w, pname);
  std::string svg = render_svg(w, a, p);
  if (output.empty()) {
    out << svg;
  } else {
    std::ofstream f(output);
    if (!f) throw stagtor_error("cannot write " + output);
    f << svg;
    out << "svg written to " << output << "\n";
  }
  return 0;
}

}  // namespace

std::string render_svg(const Workspace& w, const SStructure* a, const Perversity* p) {
  if (w.rank != 2) throw stagtor_error("svg rendering is only available for rank-2 fans");
  const long scale = 90;
  auto coords = [&](const IVec& v) {
    Int m = 0;
    for (Index i = 0; i < 2; ++i) {
      Int x = v[i] < 0 ? Int(-v[i]) : v[i];
      if (x > m) m = x;
    }
    if (m == 0) m = 1;
    long x = Int((v[0] * scale) / m).get_si();
    long y = Int((v[1] * scale) / m).get_si();
    return std::make_pair(200 + x, 200 - y);
  };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" "
        "viewBox=\"0 0 400 400\">\n";
  os << "<rect width=\"400\" height=\"400\" fill=\"white\"/>\n";
  for (int c = 0; c < w.fan.size(); ++c) {
    const Cone& cone = w.fan.cone(c);
    if (cone.dim() == 2 && cone.rays().size() >= 2) {
      auto [x1, y1] = coords(cone.rays().front());
      auto [x2, y2] = coords(cone.rays().back());
      os << "<polygon points=\"200,200 " << x1 << "," << y1 << " " << x2 << "," << y2
         << "\" fill=\"#dde8f8\" stroke=\"none\"/>\n";
    }
  }
  for (const IVec& r : w.rays) {
    auto [x, y] = coords(r);
    os << "<line x1=\"200\" y1=\"200\" x2=\"" << x << "\" y2=\"" << y
       << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  }
  for (int c = 0; c < w.fan.size(); ++c) {
    const Cone& cone = w.fan.cone(c);
    IVec probe = zero_vec(2);
    for (const IVec& r : cone.rays()) probe += r;
    auto [cx, cy] = coords(probe);
    if (cone.dim() == 0) {
      cx = 200;
      cy = 200;
    }
    if (a) {
      const IVec& ac = a->at(c);
      if (!is_zero(ac)) {
        auto [ax, ay] = coords(ac);
        os << "<line x1=\"" << cx << "\" y1=\"" << cy << "\" x2=\"" << cx + (ax - 200) / 3
           << "\" y2=\"" << cy + (ay - 200) / 3
           << "\" stroke=\"#c03030\" stroke-width=\"2\" marker-end=\"none\"/>\n";
      }
    }
    os << "<text x=\"" << cx + 4 << "\" y=\"" << cy - 4 << "\" font-size=\"11\">" << c;
    if (p) os << " p=" << p->at(c).get_str();
    os << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact combinatorial calculus of staggered t-structures on toric varieties"};
  app.require_subcommand(1);

  std::string path, what = "sstructures", aname, pname, cname, anchor, output, mname;
  std::vector<std::string> complex_names;
  long bound = 3, wlev = 0;

  auto* validate = app.add_subcommand("validate", "check every object in a fan file");
  validate->add_option("file", path)->required();

  auto* enumerate = app.add_subcommand("enumerate", "count s-structures or perversities");
  enumerate->add_option("file", path)->required();
  enumerate->add_option("--what", what, "sstructures or perversities")->required();
  enumerate->add_option("--bound", bound, "coordinate bound for s-structures");
  enumerate->add_option("--sstructure", aname);
  enumerate->add_option("--pl", cname);
  enumerate->add_option("--anchor", anchor, "CONE=VALUE normalization");
  bool list = false;
  enumerate->add_flag("--list", list, "print the items as well as the count");

  auto* selfdual = app.add_subcommand("selfdual", "search for a self-duality witness");
  selfdual->add_option("file", path)->required();
  selfdual->add_option("--sstructure", aname)->required();
  selfdual->add_option("--bound", bound);
  selfdual->add_option("-o,--output", output, "write the witness as a fan file");

  auto* membership = app.add_subcommand("membership", "aisle membership of complexes");
  membership->add_option("file", path)->required();
  membership->add_option("--complex", complex_names)->required();
  membership->add_option("--sstructure", aname)->required();
  membership->add_option("--perversity", pname)->required();
  membership->add_option("--pl", cname);

  auto* truncate = app.add_subcommand("truncate", "s-truncation of a chart module");
  truncate->add_option("file", path)->required();
  truncate->add_option("--module", mname)->required();
  truncate->add_option("--sstructure", aname)->required();
  truncate->add_option("-w,--level", wlev)->required();
  truncate->add_option("-o,--output", output);

  auto* svg = app.add_subcommand("svg", "render a rank-2 fan");
  svg->add_option("file", path)->required();
  svg->add_option("--sstructure", aname);
  svg->add_option("--perversity", pname);
  svg->add_option("-o,--output", output);

  auto* format = app.add_subcommand("format", "print the canonical form of a fan file");
  format->add_option("file", path)->required();

  std::vector<const char*> argv{"stagtor"};
  for (const std::string& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    Workspace w = load_workspace(path);
    if (validate->parsed()) return cmd_validate(w, out);
    if (enumerate->parsed()) return cmd_enumerate(w, what, bound, aname, cname, anchor, list, out);
    if (selfdual->parsed()) return cmd_selfdual(w, aname, bound, output, out);
    if (membership->parsed()) return cmd_membership(w, complex_names, aname, pname, cname, out);
    if (truncate->parsed()) return cmd_truncate(w, mname, aname, wlev, output, out);
    if (svg->parsed()) return cmd_svg(w, aname, pname, output, out);
    if (format->parsed()) {
      out << serialize_workspace(w);
      return 0;
    }
  } catch (const parse_error& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const stagtor_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace stagtor
