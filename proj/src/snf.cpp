#include "stagtor/snf.hpp"

namespace stagtor {

namespace {

void swap_rows(IMat& m, Index i, Index j) { m.row(i).swap(m.row(j)); }
void swap_cols(IMat& m, Index i, Index j) { m.col(i).swap(m.col(j)); }

// row(i) += c * row(j), mirrored into u.
void add_row(IMat& m, IMat& u, Index i, Index j, const Int& c) {
  m.row(i) += c * m.row(j);
  u.row(i) += c * u.row(j);
}

void add_col(IMat& m, IMat& v, Index i, Index j, const Int& c) {
  m.col(i) += c * m.col(j);
  v.col(i) += c * v.col(j);
}

}  // namespace

namespace {

// Quotient with remainder of least absolute value; keeps every reduction
// step at most half the pivot, which bounds the number of rounds and tames
// intermediate entry growth.
Int nearest_div(const Int& a, const Int& b) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  Int b_abs = b < 0 ? Int(-b) : b;
  if (2 * r > b_abs) q += 1;  // floor remainder is in [0, |b|)
  return q;
}

}  // namespace

SmithForm smith_normal_form(const IMat& m) {
  const Index rows = m.rows(), cols = m.cols();
  SmithForm out;
  out.u = IMat::Identity(rows, rows);
  out.v = IMat::Identity(cols, cols);
  out.d = m;
  IMat& d = out.d;

  Index t = 0;
  while (t < rows && t < cols) {
    // move a nonzero entry of least absolute value into the pivot slot
    auto repivot = [&]() {
      Index pi = -1, pj = -1;
      Int best = 0;
      for (Index i = t; i < rows; ++i)
        for (Index j = t; j < cols; ++j) {
          if (d(i, j) == 0) continue;
          Int a = d(i, j) < 0 ? Int(-d(i, j)) : d(i, j);
          if (pi < 0 || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) return false;
      if (pi != t) {
        swap_rows(d, t, pi);
        swap_rows(out.u, t, pi);
      }
      if (pj != t) {
        swap_cols(d, t, pj);
        swap_cols(out.v, t, pj);
      }
      return true;
    };
    if (!repivot()) break;  // trailing block is zero

    while (true) {
      // reduce the pivot column and row to least remainders
      bool leftover = false;
      for (Index i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        add_row(d, out.u, i, t, -nearest_div(d(i, t), d(t, t)));
        if (d(i, t) != 0) leftover = true;
      }
      for (Index j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        add_col(d, out.v, j, t, -nearest_div(d(t, j), d(t, t)));
        if (d(t, j) != 0) leftover = true;
      }
      if (leftover) {
        repivot();  // a remainder of at most half the pivot exists
        continue;
      }
      // pivot row and column are clear; enforce divisibility of the rest
      bool fixed = false;
      for (Index i = t + 1; i < rows && !fixed; ++i)
        for (Index j = t + 1; j < cols && !fixed; ++j)
          if (d(i, j) % d(t, t) != 0) {
            add_row(d, out.u, t, i, 1);
            fixed = true;
          }
      if (!fixed) break;
    }
    if (d(t, t) < 0) {
      d.row(t) = -d.row(t);
      out.u.row(t) = -out.u.row(t);
    }
    ++t;
  }
  out.rank = 0;
  for (Index i = 0; i < t; ++i)
    if (d(i, i) != 0) ++out.rank;
  return out;
}

IMat integer_inverse(const IMat& u) {
  SmithForm s = smith_normal_form(u);
  if (s.rank != u.rows() || u.rows() != u.cols())
    throw stagtor_error("integer_inverse: matrix not unimodular");
  for (Index i = 0; i < s.rank; ++i)
    if (s.d(i, i) != 1) throw stagtor_error("integer_inverse: matrix not unimodular");
  // s.u * u * s.v = I  =>  u^{-1} = s.v * s.u
  return s.v * s.u;
}

std::optional<IVec> solve_integer(const IMat& a, const IVec& b) {
  if (a.rows() != b.size()) throw stagtor_error("solve_integer: size mismatch");
  SmithForm s = smith_normal_form(a);
  IVec c = s.u * b;
  IVec y = IVec::Zero(a.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    Int di = (i < a.cols()) ? s.d(i, i) : Int(0);
    if (di == 0) {
      if (c[i] != 0) return std::nullopt;
    } else {
      if (c[i] % di != 0) return std::nullopt;
      y[i] = c[i] / di;
    }
  }
  return IVec(s.v * y);
}

std::vector<IVec> integer_kernel(const IMat& a) {
  SmithForm s = smith_normal_form(a);
  std::vector<IVec> basis;
  for (Index j = s.rank; j < a.cols(); ++j) basis.push_back(s.v.col(j));
  return basis;
}

IMat columns_to_matrix(const std::vector<IVec>& cols, Index rank) {
  IMat m(rank, static_cast<Index>(cols.size()));
  for (Index j = 0; j < m.cols(); ++j) {
    if (cols[j].size() != rank) throw stagtor_error("columns_to_matrix: rank mismatch");
    m.col(j) = cols[j];
  }
  return m;
}

std::vector<IVec> saturate_span(const std::vector<IVec>& vs, Index rank) {
  if (vs.empty()) return {};
  // saturation = (perp(perp(span))): kernels are automatically saturated.
  IMat m = columns_to_matrix(vs, rank);
  std::vector<IVec> perp = integer_kernel(m.transpose());
  if (perp.empty()) {
    // full rank: canonical basis of Z^n
    std::vector<IVec> basis;
    for (Index i = 0; i < rank; ++i) basis.push_back(unit_vec(rank, i));
    return basis;
  }
  IMat p = columns_to_matrix(perp, rank);
  return integer_kernel(p.transpose());
}

bool in_lattice(const std::vector<IVec>& basis, const IVec& v) {
  if (basis.empty()) return is_zero(v);
  return solve_integer(columns_to_matrix(basis, v.size()), v).has_value();
}

LatticeProjection::LatticeProjection(const std::vector<IVec>& basis, Index rank) {
  n_ = rank;
  std::vector<IVec> sat = saturate_span(basis, rank);
  l_ = static_cast<Index>(sat.size());
  if (l_ == 0) {
    u_ = IMat::Identity(n_, n_);
    u_inv_ = u_;
    return;
  }
  IMat b = columns_to_matrix(sat, rank);
  SmithForm s = smith_normal_form(b);
  for (Index i = 0; i < l_; ++i)
    if (s.d(i, i) != 1) throw stagtor_error("LatticeProjection: basis not saturated");
  u_ = s.u;
  u_inv_ = integer_inverse(u_);
}

IVec LatticeProjection::project(const IVec& x) const {
  if (x.size() != n_) throw stagtor_error("LatticeProjection: rank mismatch");
  IVec w = u_ * x;
  return w.tail(n_ - l_);
}

IVec LatticeProjection::section(const IVec& y) const {
  if (y.size() != n_ - l_) throw stagtor_error("LatticeProjection: quotient rank mismatch");
  IVec w = IVec::Zero(n_);
  w.tail(n_ - l_) = y;
  return u_inv_ * w;
}

IVec LatticeProjection::canonical_rep(const IVec& x) const { return section(project(x)); }

}  // namespace stagtor
