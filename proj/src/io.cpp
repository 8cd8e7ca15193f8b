#include "stagtor/io.hpp"

#include <fstream>
#include <sstream>

namespace stagtor {

std::shared_ptr<const ChartSpec> Workspace::chart(ConeId id) const {
  auto it = chart_cache_.find(id);
  if (it != chart_cache_.end()) return it->second;
  auto spec = std::make_shared<const ChartSpec>(chart_spec(fan, id));
  chart_cache_[id] = spec;
  return spec;
}

namespace {

struct Token {
  enum class Kind { ident, integer, punct, end } kind;
  std::string text;
  int line;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_space();
    if (pos_ >= text_.size()) return {Token::Kind::end, "", line_};
    char c = text_[pos_];
    int line = line_;
    if (c == '(' || c == ')' || c == '[' || c == ']' || c == '{' || c == '}' || c == ',' ||
        c == '/') {
      ++pos_;
      return {Token::Kind::punct, std::string(1, c), line};
    }
    if (c == '-' || (c >= '0' && c <= '9')) {
      size_t start = pos_++;
      while (pos_ < text_.size() && text_[pos_] >= '0' && text_[pos_] <= '9') ++pos_;
      return {Token::Kind::integer, text_.substr(start, pos_ - start), line};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_++;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
              text_[pos_] == '-' || text_[pos_] == '.'))
        ++pos_;
      return {Token::Kind::ident, text_.substr(start, pos_ - start), line};
    }
    throw parse_error(std::string("unexpected character '") + c + "'", line_);
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) { advance(); }

  Workspace parse() {
    expect_ident("stagfan");
    Int version = integer();
    if (version != 1) throw parse_error("unsupported format version", cur_.line);

    Workspace w;
    bool have_lattice = false, have_cones = false;
    std::vector<IVec> file_rays;
    std::vector<std::vector<int>> file_cones;
    // raw sections to resolve once the fan is built
    struct Named {
      std::string section, name;
      int line;
      std::vector<std::pair<int, IVec>> cone_vecs;     // SSTRUCTURE / PL per-cone
      std::vector<Int> ray_values;                     // PL shorthand
      bool ray_shorthand = false;
      std::vector<std::pair<int, Int>> cone_ints;      // PERVERSITY
      int chart = -1;                                  // MODULE / COMPLEX
      std::vector<IVec> gens;                          // MODULE
      std::vector<std::pair<int, IVec>> rels;          // MODULE
      std::map<int, std::vector<IVec>> terms;          // COMPLEX
      std::map<int, std::vector<Rat>> diffs;           // COMPLEX (row-major)
    };
    std::vector<Named> named;

    while (cur_.kind != Token::Kind::end) {
      std::string section = ident();
      if (section == "LATTICE") {
        expect_punct("{");
        expect_ident("rank");
        w.rank = static_cast<Index>(integer().get_si());
        if (w.rank < 1) throw parse_error("rank must be at least 1", cur_.line);
        expect_punct("}");
        have_lattice = true;
      } else if (section == "RAYS") {
        require_lattice(have_lattice);
        expect_punct("[");
        while (!peek_punct("]")) file_rays.push_back(vec(w.rank));
        expect_punct("]");
      } else if (section == "CONES") {
        require_lattice(have_lattice);
        expect_punct("[");
        while (!peek_punct("]")) {
          expect_punct("[");
          std::vector<int> idx;
          while (!peek_punct("]")) {
            int i = static_cast<int>(integer().get_si());
            if (i < 0 || i >= static_cast<int>(file_rays.size()))
              throw parse_error("ray index out of range", cur_.line);
            idx.push_back(i);
          }
          expect_punct("]");
          file_cones.push_back(std::move(idx));
        }
        expect_punct("]");
        have_cones = true;
      } else if (section == "SSTRUCTURE" || section == "PL" || section == "PERVERSITY" ||
                 section == "MODULE" || section == "COMPLEX") {
        require_lattice(have_lattice);
        if (!have_cones) throw parse_error(section + " before CONES", cur_.line);
        Named rec;
        rec.section = section;
        rec.name = ident();
        rec.line = cur_.line;
        expect_punct("{");
        if (section == "SSTRUCTURE") {
          while (!peek_punct("}")) {
            int id = cone_ref(file_cones.size());
            rec.cone_vecs.emplace_back(id, vec(w.rank));
          }
        } else if (section == "PL") {
          if (cur_.kind == Token::Kind::ident && cur_.text == "rays") {
            advance();
            rec.ray_shorthand = true;
            while (!peek_punct("}")) rec.ray_values.push_back(integer());
          } else {
            while (!peek_punct("}")) {
              int id = cone_ref(file_cones.size());
              rec.cone_vecs.emplace_back(id, vec(w.rank));
            }
          }
        } else if (section == "PERVERSITY") {
          while (!peek_punct("}")) {
            int id = cone_ref(file_cones.size());
            rec.cone_ints.emplace_back(id, integer());
          }
        } else if (section == "MODULE") {
          expect_ident("chart");
          rec.chart = cone_ref(file_cones.size());
          expect_ident("gens");
          expect_punct("[");
          while (!peek_punct("]")) rec.gens.push_back(vec(w.rank));
          expect_punct("]");
          if (cur_.kind == Token::Kind::ident && cur_.text == "rels") {
            advance();
            expect_punct("[");
            while (!peek_punct("]")) {
              expect_punct("(");
              int g = static_cast<int>(integer().get_si());
              IVec mu = vec(w.rank);
              expect_punct(")");
              rec.rels.emplace_back(g, mu);
            }
            expect_punct("]");
          }
        } else {  // COMPLEX
          expect_ident("chart");
          rec.chart = cone_ref(file_cones.size());
          while (!peek_punct("}")) {
            std::string what = ident();
            int k = static_cast<int>(integer().get_si());
            expect_punct("[");
            if (what == "term") {
              std::vector<IVec> gens;
              while (!peek_punct("]")) gens.push_back(vec(w.rank));
              rec.terms[k] = std::move(gens);
            } else if (what == "diff") {
              std::vector<Rat> entries;
              while (!peek_punct("]")) entries.push_back(rational());
              rec.diffs[k] = std::move(entries);
            } else {
              throw parse_error("expected 'term' or 'diff' in COMPLEX", cur_.line);
            }
            expect_punct("]");
          }
        }
        expect_punct("}");
        named.push_back(std::move(rec));
      } else {
        throw parse_error("unknown section '" + section + "'", cur_.line);
      }
    }
    if (!have_lattice) throw parse_error("missing LATTICE section", 1);
    if (!have_cones) throw parse_error("missing CONES section", 1);

    // build the fan; ids are remapped to the canonical order
    std::vector<Cone> cones;
    for (const auto& idx : file_cones) {
      std::vector<IVec> gens;
      for (int i : idx) gens.push_back(file_rays[i]);
      cones.push_back(Cone::from_generators(gens, w.rank));
    }
    w.fan = Fan::from_cones(cones, w.rank);
    if (w.fan.size() != static_cast<int>(file_cones.size()))
      throw parse_error("duplicate cones in CONES section", 1);
    std::vector<ConeId> remap(file_cones.size());
    for (size_t i = 0; i < file_cones.size(); ++i) remap[i] = w.fan.require(cones[i]);
    for (int i = 0; i < w.fan.size(); ++i)
      for (const IVec& r : w.fan.cone(i).rays()) w.rays.push_back(r);
    sort_lex(w.rays);
    w.rays.erase(std::unique(w.rays.begin(), w.rays.end()), w.rays.end());

    for (const Named& rec : named) {
      if (rec.section == "SSTRUCTURE") {
        SStructure a;
        for (auto& [id, v] : rec.cone_vecs) a.assignments[remap[id]] = v;
        if (!a.covers(w.fan))
          throw parse_error("SSTRUCTURE " + rec.name + " does not cover every cone", rec.line);
        w.sstructures[rec.name] = std::move(a);
      } else if (rec.section == "PL") {
        if (rec.ray_shorthand) {
          if (rec.ray_values.size() != w.rays.size())
            throw parse_error("PL " + rec.name + ": ray value count mismatch", rec.line);
          std::map<ConeId, Int> by_ray;
          for (size_t i = 0; i < w.rays.size(); ++i) {
            ConeId rid = w.fan.require(Cone::from_generators({w.rays[i]}, w.rank));
            by_ray[rid] = rec.ray_values[i];
          }
          w.pls[rec.name] = pl_from_ray_values(w.fan, by_ray);
        } else {
          PLFunction chi;
          for (auto& [id, v] : rec.cone_vecs) chi.per_cone[remap[id]] = v;
          if (!chi.covers(w.fan))
            throw parse_error("PL " + rec.name + " does not cover every cone", rec.line);
          w.pls[rec.name] = std::move(chi);
        }
      } else if (rec.section == "PERVERSITY") {
        Perversity p;
        for (auto& [id, v] : rec.cone_ints) p.values[remap[id]] = v;
        if (!p.covers(w.fan))
          throw parse_error("PERVERSITY " + rec.name + " does not cover every cone", rec.line);
        w.perversities[rec.name] = std::move(p);
      } else if (rec.section == "MODULE") {
        for (auto& [g, mu] : rec.rels)
          if (g < 0 || g >= static_cast<int>(rec.gens.size()))
            throw parse_error("MODULE " + rec.name + ": relation names a missing generator",
                              rec.line);
        try {
          w.modules[rec.name] = make_module(w.chart(remap[rec.chart]), rec.gens, rec.rels);
        } catch (const stagtor_error& e) {
          throw parse_error("MODULE " + rec.name + ": " + e.what(), rec.line);
        }
      } else {
        PerfectComplex f;
        f.chart = w.chart(remap[rec.chart]);
        f.terms = rec.terms;
        for (auto& [k, entries] : rec.diffs) {
          Index rows = static_cast<Index>(f.term(k + 1).size());
          Index cols = static_cast<Index>(f.term(k).size());
          if (static_cast<Index>(entries.size()) != rows * cols)
            throw parse_error("COMPLEX " + rec.name + ": diff " + std::to_string(k) +
                                  " needs " + std::to_string(rows * cols) + " entries",
                              rec.line);
          QMat d(rows, cols);
          for (Index i = 0; i < rows; ++i)
            for (Index j = 0; j < cols; ++j) d(i, j) = entries[i * cols + j];
          f.diffs[k] = std::move(d);
        }
        w.complexes[rec.name] = std::move(f);
      }
    }
    return w;
  }

 private:
  void require_lattice(bool have) const {
    if (!have) throw parse_error("LATTICE section must come first", cur_.line);
  }

  void advance() { cur_ = lex_.next(); }

  std::string ident() {
    if (cur_.kind != Token::Kind::ident) throw parse_error("expected identifier", cur_.line);
    std::string s = cur_.text;
    advance();
    return s;
  }

  void expect_ident(const std::string& s) {
    if (cur_.kind != Token::Kind::ident || cur_.text != s)
      throw parse_error("expected '" + s + "'", cur_.line);
    advance();
  }

  void expect_punct(const std::string& s) {
    if (cur_.kind != Token::Kind::punct || cur_.text != s)
      throw parse_error("expected '" + s + "'", cur_.line);
    advance();
  }

  bool peek_punct(const std::string& s) const {
    return cur_.kind == Token::Kind::punct && cur_.text == s;
  }

  Int integer() {
    if (cur_.kind != Token::Kind::integer) throw parse_error("expected integer", cur_.line);
    Int v(cur_.text);
    advance();
    return v;
  }

  Rat rational() {
    Int num = integer();
    if (peek_punct("/")) {
      advance();
      Int den = integer();
      if (den == 0) throw parse_error("zero denominator", cur_.line);
      Rat r(num, den);
      r.canonicalize();
      return r;
    }
    return Rat(num);
  }

  IVec vec(Index rank) {
    expect_punct("(");
    IVec v(rank);
    for (Index i = 0; i < rank; ++i) {
      if (i) expect_punct(",");
      v[i] = integer();
    }
    expect_punct(")");
    return v;
  }

  int cone_ref(size_t n_cones) {
    int line = cur_.line;
    Int id = integer();
    if (id < 0 || id >= static_cast<long>(n_cones))
      throw parse_error("cone id " + id.get_str() + " out of range", line);
    return static_cast<int>(id.get_si());
  }

  Lexer lex_;
  Token cur_{Token::Kind::end, "", 1};
};

void write_vec(std::ostream& os, const IVec& v) { os << to_string(v); }

}  // namespace

Workspace parse_workspace(const std::string& text) { return Parser(text).parse(); }

Workspace load_workspace(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw stagtor_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_workspace(ss.str());
}

std::string serialize_workspace(const Workspace& w) {
  std::ostringstream os;
  os << "stagfan 1\n\n";
  os << "LATTICE { rank " << w.rank << " }\n";
  os << "RAYS [";
  for (const IVec& r : w.rays) {
    os << " ";
    write_vec(os, r);
  }
  os << " ]\n";
  std::map<IVec, int, LexLess> ray_index;
  for (size_t i = 0; i < w.rays.size(); ++i) ray_index[w.rays[i]] = static_cast<int>(i);
  os << "CONES [";
  for (int c = 0; c < w.fan.size(); ++c) {
    os << " [";
    for (const IVec& r : w.fan.cone(c).rays()) os << " " << ray_index.at(r);
    os << " ]";
  }
  os << " ]\n";
  for (auto& [name, a] : w.sstructures) {
    os << "\nSSTRUCTURE " << name << " {\n";
    for (auto& [id, v] : a.assignments) {
      os << "  " << id << " ";
      write_vec(os, v);
      os << "\n";
    }
    os << "}\n";
  }
  for (auto& [name, chi] : w.pls) {
    os << "\nPL " << name << " {\n";
    for (auto& [id, v] : chi.per_cone) {
      os << "  " << id << " ";
      write_vec(os, v);
      os << "\n";
    }
    os << "}\n";
  }
  for (auto& [name, p] : w.perversities) {
    os << "\nPERVERSITY " << name << " {\n";
    for (auto& [id, v] : p.values) os << "  " << id << " " << v.get_str() << "\n";
    os << "}\n";
  }
  for (auto& [name, m] : w.modules) {
    os << "\nMODULE " << name << " { chart " << m.chart->chart_cone_id() << "\n  gens [";
    for (const IVec& g : m.gen_degrees) {
      os << " ";
      write_vec(os, g);
    }
    os << " ]\n  rels [";
    for (auto& [g, mu] : m.relations) {
      os << " (" << g << " ";
      write_vec(os, mu);
      os << ")";
    }
    os << " ]\n}\n";
  }
  for (auto& [name, f] : w.complexes) {
    os << "\nCOMPLEX " << name << " { chart " << f.chart->chart_cone_id() << "\n";
    for (auto& [k, gens] : f.terms) {
      os << "  term " << k << " [";
      for (const IVec& g : gens) {
        os << " ";
        write_vec(os, g);
      }
      os << " ]\n";
    }
    for (auto& [k, d] : f.diffs) {
      os << "  diff " << k << " [";
      for (Index i = 0; i < d.rows(); ++i)
        for (Index j = 0; j < d.cols(); ++j) os << " " << d(i, j);
      os << " ]\n";
    }
    os << "}\n";
  }
  return os.str();
}

void save_workspace(const Workspace& w, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw stagtor_error("cannot write " + path);
  out << serialize_workspace(w);
}

}  // namespace stagtor
