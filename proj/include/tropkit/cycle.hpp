#pragma once

#include <map>
#include <string>
#include <vector>

#include "tropkit/complex.hpp"

namespace tropkit {

// A weighted polyhedral complex. The weighted cells are exactly the maximal
// cells of the underlying complex; weights are nonzero integers. `dim` is
// the declared dimension (max weighted cell dimension; kept explicitly so
// that empty cycles of a given dimension exist, e.g. empty corner loci).
class TropicalCycle {
public:
    PolyhedralComplex complex;
    int dim = -1;
    std::map<int, long long> weights;

    bool is_zero() const { return weights.empty(); }
    bool is_effective() const;
    bool is_pure() const; // all weighted cells have dimension exactly dim
    std::vector<int> weighted_cells() const;
    const Polyhedron& cell(int i) const { return complex.cells[static_cast<std::size_t>(i)]; }
};

// Assembles a cycle from cells with weights. Cells with weight zero are
// pruned (reported in `warnings`); unweighted maximal cells left over by the
// closure are pruned as well so that weighted cells = maximal cells.
TropicalCycle make_cycle(int n, const std::vector<std::pair<Polyhedron, long long>>& weighted,
                         std::vector<std::string>* warnings = nullptr,
                         bool validate = false);

struct BalancingViolation {
    int face;     // codim-1 cell index
    ZVec excess;  // weighted normal sum, reduced modulo lin(tau)
};

struct BalancingReport {
    bool balanced = true;
    std::vector<BalancingViolation> violations;
    std::size_t faces_checked = 0;
};

// Checks the balancing condition at every codimension-1 cell. Requires a
// pure cycle. Report order is ascending face index.
BalancingReport check_balancing(const TropicalCycle& c);

// The fan of outgoing directions at omega, translated to the origin, with
// inherited weights. Throws PointNotOnSupport.
TropicalCycle star(const TropicalCycle& c, const QVec& omega);

struct LocalDimension {
    int min_dim = -1;
    int max_dim = -1;
    bool is_pure = true;
};

LocalDimension local_dimension(const TropicalCycle& c, const QVec& omega);

// Exact equality as weighted cycles: equal supports and equal weights on a
// common refinement.
bool cycles_equal_weighted(const TropicalCycle& a, const TropicalCycle& b);

// Subdivides every weighted cell by the hyperplanes {form = 0}; weights are
// inherited. Support is unchanged. Requires a pure cycle.
TropicalCycle refine_cycle_by_forms(const TropicalCycle& c, const std::vector<AffineForm>& forms);

// Scales every weight by k (k nonzero).
TropicalCycle scale_cycle(const TropicalCycle& c, long long k);

} // namespace tropkit
