#pragma once

// Independent reference implementations used to freeze expected values.
// Everything here is deliberately written against different data structures
// and elimination orders than the library paths it checks.

#include <vector>

#include "monodromy/ffcore.hpp"

namespace oracles {

using monodromy::Field;
using monodromy::Mat;
using monodromy::i64;
using monodromy::u64;

// Dimension of the bracket closure by naive resaturation: regenerate the
// whole product list each round and measure rank from scratch.
u64 bracket_closure_dim(const Field& F, const std::vector<Mat>& seeds, u64 n);

// Exhaustive power table.
u64 dlog_power_table(const Field& F, u64 a, u64 g);

// Least monic irreducible quadratic over GF(ell) by root search, returned as
// the low coefficients (c0, c1).
std::vector<u64> least_irreducible_quadratic(u64 ell);

// Group order by BFS over std::set of entry vectors.
u64 bfs_group_order(const Field& F, u64 n, const std::vector<Mat>& gens, u64 cap);

// Elementary transvection generators of SL_n(F_q).
std::vector<Mat> sl_generators(const Field& F, u64 n);

// All symplectic transvections x -> x + lambda <x, v> v for the standard
// form; generates Sp_4(F_q).
std::vector<Mat> sp4_transvections(const Field& F);

// Random invertible matrix / random nilpotent matrix (conjugated strictly
// upper triangular).
Mat random_invertible(const Field& F, u64 n, u64 seed);
Mat random_nilpotent(const Field& F, u64 n, u64 seed);

// Basis of the full centralizer algebra {X : XM = MX}, solved as a linear
// system over F (independent of any group structure on M).
std::vector<Mat> centralizer_basis(const Field& F, const Mat& M);

}  // namespace oracles
