#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
  typedef mpz_class Real;
  typedef mpz_class NonInteger;
  typedef mpz_class Nested;
  typedef mpz_class Literal;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 1,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  typedef mpq_class Real;
  typedef mpq_class NonInteger;
  typedef mpq_class Nested;
  typedef mpq_class Literal;
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100
  };
};

}  // namespace Eigen

namespace stagtor {

// All lattice arithmetic is exact. Int is an arbitrary-precision integer,
// Rat an arbitrary-precision rational (used only for complex coefficients).
using Int = mpz_class;
using Rat = mpq_class;

// Dense types over the exact scalar. A LatticeVector (cocharacter) and a
// Covector (character) are both IVec; the pairing below is the only bridge.
using IVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using IMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using QMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

using Index = Eigen::Index;

class stagtor_error : public std::runtime_error {
 public:
  explicit stagtor_error(const std::string& what) : std::runtime_error(what) {}
};

inline Int pairing(const IVec& character, const IVec& cocharacter) {
  if (character.size() != cocharacter.size())
    throw stagtor_error("pairing: rank mismatch");
  Int s = 0;
  for (Index i = 0; i < character.size(); ++i) s += character[i] * cocharacter[i];
  return s;
}

inline IVec zero_vec(Index n) { return IVec::Zero(n); }

inline IVec unit_vec(Index n, Index i) {
  IVec v = IVec::Zero(n);
  v[i] = 1;
  return v;
}

inline IVec make_vec(std::initializer_list<long> xs) {
  IVec v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (long x : xs) v[i++] = x;
  return v;
}

inline bool is_zero(const IVec& v) {
  for (Index i = 0; i < v.size(); ++i)
    if (v[i] != 0) return false;
  return true;
}

inline Int gcd_int(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int content(const IVec& v) {
  Int g = 0;
  for (Index i = 0; i < v.size(); ++i) g = gcd_int(g, v[i]);
  return g;
}

// Divides out the content, keeping direction. Zero vectors stay zero.
inline IVec primitive(IVec v) {
  Int g = content(v);
  if (g > 1)
    for (Index i = 0; i < v.size(); ++i) v[i] /= g;
  return v;
}

inline int lex_compare(const IVec& a, const IVec& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return -1;
    if (a[i] > b[i]) return 1;
  }
  return 0;
}

struct LexLess {
  bool operator()(const IVec& a, const IVec& b) const { return lex_compare(a, b) < 0; }
};

inline void sort_lex(std::vector<IVec>& vs) {
  std::sort(vs.begin(), vs.end(), LexLess{});
}

inline std::string to_string(const IVec& v) {
  std::string s = "(";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].get_str();
  }
  s += ")";
  return s;
}

}  // namespace stagtor
