#pragma once

#include <string>
#include <vector>

#include "tropkit/polyhedron.hpp"

namespace tropkit {

struct ComplexBuildReport {
    std::size_t input_cells = 0;
    std::size_t added_faces = 0; // cells added by face closure
};

// A finite polyhedral complex: cells closed under faces, pairwise
// intersections are common faces. Cells are stored in a canonical order
// (by dimension, then canonical key), so indices are deterministic.
class PolyhedralComplex {
public:
    int ambient_dim = 0;
    std::vector<Polyhedron> cells;
    std::vector<std::vector<int>> facets_of; // cell -> indices of its facets
    std::vector<int> maximal;                // inclusion-maximal cell indices

    int find_cell(const Polyhedron& p) const;
    std::vector<int> cells_containing(const QVec& x) const;
    bool supports(const QVec& x) const;
    // Maximal cells having cell `i` as a face.
    std::vector<int> maximal_above(int i) const;
};

// Face-closes the input and checks the pairwise intersection axiom on the
// input cells; throws IntersectionAxiomViolated(i, j) with input indices.
PolyhedralComplex validate_complex(int n, const std::vector<Polyhedron>& cells,
                                   ComplexBuildReport* report = nullptr);

// Face-closes and indexes without the pairwise axiom check, for complexes
// valid by construction (refinements, stars, subcomplexes).
PolyhedralComplex build_complex_unchecked(int n, const std::vector<Polyhedron>& cells);

} // namespace tropkit
