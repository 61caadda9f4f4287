#pragma once

#include <optional>
#include <vector>

#include "tropkit/rational.hpp"

namespace tropkit {

// Vectors are rows throughout; a matrix is a list of row vectors.

Rational dot(const QVec& a, const QVec& b);
QVec add(const QVec& a, const QVec& b);
QVec sub(const QVec& a, const QVec& b);
QVec scale(const QVec& a, const Rational& c);
QVec neg(const QVec& a);
bool is_zero_vec(const QVec& a);
QVec zero_vec(int n);

bool lex_less(const QVec& a, const QVec& b);

QVec to_qvec(const ZVec& v);
ZVec zneg(const ZVec& v);
bool is_zero_zvec(const ZVec& v);

// Reduced row echelon form in place. Returns the rank; if `pivots` is given
// it receives the pivot column of each nonzero row.
int rref(QMat& m, std::vector<int>* pivots = nullptr);

int rank(QMat m);

// Canonical basis of the row space: RREF rows scaled to primitive integer
// vectors (entries integral, content 1, leading entry positive).
QMat row_space_basis(QMat m);

// Basis of {x : m x^T = 0} over Q, canonical (RREF of the solution space).
QMat q_kernel(const QMat& m, int n);

// One solution x of A x^T = b, if any.
std::optional<QVec> solve(QMat a, QVec b);

// Orthogonal projection of v onto the row space of `basis` (exact over Q).
QVec project_onto_rowspace(const QVec& v, const QMat& basis);

// Clears denominators and divides by the content: the unique primitive
// integer vector u with u = c*v, c > 0. Throws ZeroVector on v = 0.
ZVec primitive(const QVec& v);
ZVec primitive_z(const ZVec& v);

// Row-style Hermite normal form: returns H with the same row lattice as A,
// rank rows only, pivot entries positive, entries above each pivot reduced
// into [0, pivot).
ZMat hnf(ZMat a);

// Elementary divisors d_1 | d_2 | ... of the integer matrix (Smith normal
// form diagonal), nonnegative, zeros trimmed.
std::vector<Int> snf_divisors(ZMat a);

// Basis (rows) of the integer kernel {x in Z^n : a x^T = 0}. The result is
// a basis of a saturated lattice, returned in HNF.
ZMat z_kernel(const ZMat& a, int n);

// Determinant of a square integer matrix (Bareiss elimination).
Int z_det(ZMat a);

} // namespace tropkit
