#pragma once

#include "tropkit/linalg.hpp"

namespace tropkit {

// The unique primitive integer vector pointing in the direction of v.
// Throws ZeroVector on v = 0.
ZVec primitive_vector(const QVec& v);

// Basis of span(rows) ∩ Z^n, i.e. the saturated lattice of the rational
// subspace spanned by `span_rows`. Returned in HNF; empty for the zero space.
ZMat lattice_basis(const QMat& span_rows, int n);

// True iff the rows are a basis of a saturated sublattice of Z^n
// (all Smith elementary divisors equal 1).
bool is_saturated_basis(const ZMat& basis);

// Canonical residue of v modulo the lattice spanned by the HNF basis rows:
// pivot coordinates are reduced into [0, pivot). Zero residue iff v lies in
// the lattice.
ZVec reduce_mod_lattice(ZVec v, const ZMat& hnf_basis);

// Given a (k-1) x k integer matrix whose rows span a saturated lattice of
// rank k-1, returns u in Z^k with det[rows; u] = ±1.
ZVec complete_to_unimodular(const ZMat& rows, int k);

} // namespace tropkit
