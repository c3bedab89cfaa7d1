#include "support.hpp"

#include <map>

namespace testsup {

namespace {

void monomials_up_to(int nvars, int deg, Expvec& cur, int pos,
                     std::vector<Expvec>& out) {
  if (pos == nvars) {
    out.push_back(cur);
    return;
  }
  for (int e = 0; e <= deg; ++e) {
    cur[pos] = e;
    monomials_up_to(nvars, deg - e, cur, pos + 1, out);
  }
  cur[pos] = 0;
}

std::vector<Expvec> all_monomials(int nvars, int deg) {
  std::vector<Expvec> out;
  Expvec cur(nvars, 0);
  monomials_up_to(nvars, deg, cur, 0, out);
  return out;
}

} // namespace

bool linear_membership(const Poly& f, const std::vector<Poly>& gens, int bound) {
  const Ring& R = f.ring();
  const Field& F = R->field;
  int n = R->nvars();

  // one unknown per (generator, cofactor monomial)
  struct Unknown {
    int gen;
    Expvec mono;
  };
  std::vector<Unknown> unknowns;
  for (size_t g = 0; g < gens.size(); ++g) {
    if (gens[g].is_zero()) continue;
    int room = bound - gens[g].degree();
    if (room < 0) continue;
    for (const auto& m : all_monomials(n, room)) unknowns.push_back({static_cast<int>(g), m});
  }

  // rows: every monomial of degree <= bound (covers f and all products)
  std::map<Expvec, int> row_of;
  for (const auto& m : all_monomials(n, bound)) {
    int id = static_cast<int>(row_of.size());
    row_of.emplace(m, id);
  }
  for (const auto& [e, c] : f.terms())
    if (row_of.find(e) == row_of.end()) return false;   // f outside the span

  size_t rows = row_of.size(), cols = unknowns.size();
  std::vector<std::vector<Coef>> A(rows, std::vector<Coef>(cols + 1, F.zero()));
  for (size_t u = 0; u < cols; ++u)
    for (const auto& [e, c] : gens[unknowns[u].gen].terms())
      A[row_of.at(exp_add(e, unknowns[u].mono))][u] =
          F.add(A[row_of.at(exp_add(e, unknowns[u].mono))][u], c);
  for (const auto& [e, c] : f.terms()) A[row_of.at(e)][cols] = c;

  // Gaussian elimination; inconsistent iff a zero row has nonzero rhs.
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t pivot = rank;
    while (pivot < rows && A[pivot][col].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(A[pivot], A[rank]);
    Coef inv = F.inv(A[rank][col]);
    for (size_t j = col; j <= cols; ++j) A[rank][j] = F.mul(A[rank][j], inv);
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || A[r][col].is_zero()) continue;
      Coef factor = A[r][col];
      for (size_t j = col; j <= cols; ++j)
        A[r][j] = F.sub(A[r][j], F.mul(factor, A[rank][j]));
    }
    ++rank;
  }
  for (size_t r = rank; r < rows; ++r)
    if (!A[r][cols].is_zero()) return false;
  return true;
}

} // namespace testsup
