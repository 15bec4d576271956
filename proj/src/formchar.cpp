#include "monodromy/formchar.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace monodromy {

namespace {

i64 checked_mul(i64 a, i64 b) {
  __int128 p = __int128(a) * b;
  if (p > __int128(INT64_MAX) || p < __int128(INT64_MIN)) throw error("formchar: integer overflow");
  return i64(p);
}

i64 checked_add(i64 a, i64 b) {
  __int128 s = __int128(a) + b;
  if (s > __int128(INT64_MAX) || s < __int128(INT64_MIN)) throw error("formchar: integer overflow");
  return i64(s);
}

// row[j] -= q * other[j]
void row_axpy(std::vector<i64>& row, const std::vector<i64>& other, i64 q) {
  for (size_t j = 0; j < row.size(); ++j) row[j] = checked_add(row[j], checked_mul(-q, other[j]));
}

i64 floor_div(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

IntMat hnf(IntMat rows, u64 n) {
  for (auto& r : rows)
    if (r.size() != n) throw error("formchar: basis row has wrong length");
  size_t rank = 0;
  for (u64 col = 0; col < n && rank < rows.size(); ++col) {
    // Euclidean elimination below the pivot row
    while (true) {
      size_t best = SIZE_MAX;
      for (size_t i = rank; i < rows.size(); ++i) {
        if (rows[i][col] != 0 && (best == SIZE_MAX || std::llabs(rows[i][col]) < std::llabs(rows[best][col])))
          best = i;
      }
      if (best == SIZE_MAX) break;
      std::swap(rows[rank], rows[best]);
      bool clean = true;
      for (size_t i = rank + 1; i < rows.size(); ++i) {
        if (rows[i][col] == 0) continue;
        i64 q = rows[i][col] / rows[rank][col];
        row_axpy(rows[i], rows[rank], q);
        if (rows[i][col] != 0) clean = false;
      }
      if (clean) break;
    }
    if (rank >= rows.size() || rows[rank][col] == 0) {
      // pivot may have been swapped away; re-scan
      bool found = false;
      for (size_t i = rank; i < rows.size(); ++i)
        if (rows[i][col] != 0) {
          std::swap(rows[rank], rows[i]);
          found = true;
          break;
        }
      if (!found) continue;
    }
    if (rows[rank][col] < 0)
      for (auto& x : rows[rank]) x = -x;
    // reduce the entries above the pivot into [0, pivot)
    for (size_t i = 0; i < rank; ++i) {
      i64 q = floor_div(rows[i][col], rows[rank][col]);
      if (q != 0) row_axpy(rows[i], rows[rank], q);
    }
    ++rank;
  }
  rows.resize(rank);
  return rows;
}

IntMat annihilator_lattice(const IntMat& weights, u64 n) {
  const size_t r = weights.size();
  for (auto& row : weights)
    if (row.size() != n) throw error("formchar: weight row has wrong length");
  // column reduction of the weight matrix with a unimodular transform tracked
  IntMat A(r, std::vector<i64>(n, 0));
  for (size_t i = 0; i < r; ++i) A[i] = weights[i];
  IntMat U(n, std::vector<i64>(n, 0));  // U[c] = current column c as a vector
  for (u64 c = 0; c < n; ++c) U[c][c] = 1;

  auto col_axpy = [&](u64 dst, u64 src, i64 q) {
    for (size_t i = 0; i < r; ++i) A[i][dst] = checked_add(A[i][dst], checked_mul(-q, A[i][src]));
    for (u64 i = 0; i < n; ++i) U[dst][i] = checked_add(U[dst][i], checked_mul(-q, U[src][i]));
  };

  u64 lead = 0;
  for (size_t row = 0; row < r && lead < n; ++row) {
    while (true) {
      u64 best = n;
      for (u64 c = lead; c < n; ++c)
        if (A[row][c] != 0 && (best == n || std::llabs(A[row][c]) < std::llabs(A[row][best]))) best = c;
      if (best == n) break;  // row already zero on active columns
      std::swap(A[row][best], A[row][lead]);
      for (size_t i = 0; i < r; ++i)
        if (i != row) std::swap(A[i][best], A[i][lead]);
      std::swap(U[best], U[lead]);
      bool clean = true;
      for (u64 c = lead + 1; c < n; ++c) {
        if (A[row][c] == 0) continue;
        i64 q = A[row][c] / A[row][lead];
        col_axpy(c, lead, q);
        if (A[row][c] != 0) clean = false;
      }
      if (clean) {
        ++lead;
        break;
      }
    }
  }
  IntMat kernel;
  for (u64 c = lead; c < n; ++c) kernel.push_back(U[c]);
  return hnf(std::move(kernel), n);
}

IntMat permute_columns(const IntMat& rows, const std::vector<u64>& perm) {
  IntMat out(rows.size(), std::vector<i64>(perm.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < perm.size(); ++j) out[i][j] = rows[i][perm[j]];
  return out;
}

namespace {

bool lex_less(const IntMat& a, const IntMat& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

}  // namespace

FormalCharacter canonical_form(const IntMat& basis, u64 n) {
  if (n > 12) throw error("formchar: permutation canonicalization unsupported above n = 12");
  IntMat base = hnf(basis, n);

  // transpositions stabilizing the lattice: permutations differing by one
  // yield the same image, so only the lex-least member of each coset is kept
  std::vector<std::pair<u64, u64>> stab;
  for (u64 a = 0; a < n; ++a)
    for (u64 b = a + 1; b < n; ++b) {
      std::vector<u64> perm(n);
      std::iota(perm.begin(), perm.end(), 0);
      std::swap(perm[a], perm[b]);
      if (hnf(permute_columns(base, perm), n) == base) stab.emplace_back(a, b);
    }

  IntMat best;
  bool have_best = false;
  std::vector<u64> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool skip = false;
    for (auto [a, b] : stab) {
      // perm composed with the stabilizing swap (a b) exchanges the positions
      // of coordinates a and b; skip unless perm is least in its coset
      size_t pa = SIZE_MAX, pb = SIZE_MAX;
      for (size_t i = 0; i < n; ++i) {
        if (perm[i] == a) pa = i;
        if (perm[i] == b) pb = i;
      }
      if (pb < pa) {  // swapping would lower the earlier position's value
        skip = true;
        break;
      }
    }
    if (skip) continue;
    IntMat cand = hnf(permute_columns(base, perm), n);
    if (!have_best || lex_less(cand, best)) {
      best = std::move(cand);
      have_best = true;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  FormalCharacter fc;
  fc.n = n;
  fc.lattice_basis = std::move(best);
  fc.perm_canonical = true;
  return fc;
}

bool same_formal_character(const FormalCharacter& a, const FormalCharacter& b) {
  if (a.n != b.n) throw error("formchar: ambient dimensions differ (" + std::to_string(a.n) + " vs " + std::to_string(b.n) + ")");
  FormalCharacter ca = a.perm_canonical ? a : canonical_form(a.lattice_basis, a.n);
  FormalCharacter cb = b.perm_canonical ? b : canonical_form(b.lattice_basis, b.n);
  return ca.lattice_basis == cb.lattice_basis;
}

bool bounded_by(const IntMat& weights, i64 c) {
  for (auto& row : weights)
    for (i64 x : row)
      if (x > c || x < -c) return false;
  return true;
}

}  // namespace monodromy
