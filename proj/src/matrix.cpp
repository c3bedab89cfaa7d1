#include "pomelo/matrix.hpp"

namespace pomelo {

std::vector<int> rref(const Field& F, CoefMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int nrows = static_cast<int>(m.size());
  const int ncols = static_cast<int>(m[0].size());
  int row = 0;
  for (int col = 0; col < ncols && row < nrows; ++col) {
    int sel = -1;
    for (int r = row; r < nrows; ++r)
      if (!m[r][col].is_zero()) { sel = r; break; }
    if (sel < 0) continue;
    std::swap(m[sel], m[row]);
    Coef scale = F.inv(m[row][col]);
    for (int c = col; c < ncols; ++c) m[row][c] = F.mul(m[row][c], scale);
    for (int r = 0; r < nrows; ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      Coef factor = m[r][col];
      for (int c = col; c < ncols; ++c)
        m[r][c] = F.sub(m[r][c], F.mul(factor, m[row][c]));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int matrix_rank(const Field& F, CoefMat m) {
  return static_cast<int>(rref(F, m).size());
}

CoefMat matrix_kernel(const Field& F, const CoefMat& m0, int ncols) {
  CoefMat m = m0;
  for (const auto& r : m)
    if (static_cast<int>(r.size()) != ncols)
      throw internal_error("matrix_kernel: ragged matrix");
  std::vector<int> pivots = rref(F, m);
  std::vector<int> pivot_row(ncols, -1);
  for (int i = 0; i < static_cast<int>(pivots.size()); ++i)
    pivot_row[pivots[i]] = i;
  CoefMat ker;
  for (int col = 0; col < ncols; ++col) {
    if (pivot_row[col] >= 0) continue;
    std::vector<Coef> v(ncols, F.zero());
    v[col] = F.one();
    for (int i = 0; i < static_cast<int>(pivots.size()); ++i)
      v[pivots[i]] = F.neg(m[i][col]);
    ker.push_back(std::move(v));
  }
  return ker;
}

CoefMat mat_mul(const Field& F, const CoefMat& a, const CoefMat& b) {
  if (a.empty() || b.empty()) return {};
  const size_t n = a[0].size(), cols = b[0].size();
  if (n != b.size()) throw internal_error("mat_mul: shape mismatch");
  CoefMat out(a.size(), std::vector<Coef>(cols, F.zero()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < cols; ++j) {
        if (b[k][j].is_zero()) continue;
        out[i][j] = F.add(out[i][j], F.mul(a[i][k], b[k][j]));
      }
    }
  return out;
}

CoefMat mat_identity(const Field& F, int d) {
  CoefMat out(d, std::vector<Coef>(d, F.zero()));
  for (int i = 0; i < d; ++i) out[i][i] = F.one();
  return out;
}

CoefMat mat_add(const Field& F, const CoefMat& a, const CoefMat& b) {
  if (a.size() != b.size()) throw internal_error("mat_add: shape mismatch");
  CoefMat out = a;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) throw internal_error("mat_add: shape mismatch");
    for (size_t j = 0; j < a[i].size(); ++j) out[i][j] = F.add(a[i][j], b[i][j]);
  }
  return out;
}

CoefMat mat_scale(const Field& F, const Coef& c, const CoefMat& a) {
  CoefMat out = a;
  for (auto& row : out)
    for (auto& x : row) x = F.mul(c, x);
  return out;
}

bool mat_eq(const CoefMat& a, const CoefMat& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (size_t j = 0; j < a[i].size(); ++j)
      if (!(a[i][j] == b[i][j])) return false;
  }
  return true;
}

bool mat_is_zero(const CoefMat& a) {
  for (const auto& row : a)
    for (const auto& x : row)
      if (!x.is_zero()) return false;
  return true;
}

namespace {

// Rows cutting out span(basis_rows): x lies in the span iff its entry at
// every non-pivot column matches the unique pivot-coordinate combination.
CoefMat span_constraints(const Field& F, CoefMat basis_rows, int ncols) {
  std::vector<int> pivots = rref(F, basis_rows);
  std::vector<bool> is_pivot(ncols, false);
  for (int p : pivots) is_pivot[p] = true;
  CoefMat out;
  for (int c = 0; c < ncols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Coef> row(ncols, F.zero());
    row[c] = F.one();
    for (int t = 0; t < static_cast<int>(pivots.size()); ++t)
      row[pivots[t]] = F.neg(basis_rows[t][c]);
    out.push_back(std::move(row));
  }
  return out;
}

} // namespace

CoefMat largest_invariant_subspace(const Field& F, const CoefMat& v0,
                                   const std::vector<CoefMat>& ops, int ncols) {
  // canonicalize the starting span
  CoefMat v = v0;
  {
    std::vector<int> pivots = rref(F, v);
    v.resize(pivots.size());
  }
  while (!v.empty()) {
    CoefMat cons = span_constraints(F, v, ncols);
    CoefMat system = cons;
    for (const CoefMat& op : ops) {
      CoefMat mapped = mat_mul(F, cons, op);
      system.insert(system.end(), mapped.begin(), mapped.end());
    }
    CoefMat next = matrix_kernel(F, system, ncols);
    if (next.size() == v.size()) return next;
    v = std::move(next);
  }
  return v;
}

namespace {

void fill_monomials(int nvars, int pos, int remaining, Expvec& cur,
                    std::vector<Expvec>& out) {
  if (pos == nvars - 1) {
    cur[pos] = remaining;
    out.push_back(cur);
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    cur[pos] = e;
    fill_monomials(nvars, pos + 1, remaining - e, cur, out);
  }
}

} // namespace

std::vector<Expvec> monomials_up_to_degree(int nvars, int d) {
  std::vector<Expvec> out;
  if (nvars == 0) {
    out.push_back({});
    return out;
  }
  Expvec cur(nvars, 0);
  for (int deg = 0; deg <= d; ++deg) fill_monomials(nvars, 0, deg, cur, out);
  return out;
}

} // namespace pomelo
