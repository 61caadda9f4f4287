#pragma once

#include <cstdint>
#include <optional>

#include "tropkit/slicing.hpp"

namespace tropkit {

struct LocalMaxBlocking {
    int cell;       // weighted cell whose star cone blocks
    QVec direction; // outgoing direction with positive slope or quadratic term
    Rational slope;
    Rational quad;
};

struct LocalMaxReport {
    QVec point;
    bool is_local_max = true;
    std::optional<LocalMaxBlocking> blocking;
};

// Decides whether f(x) <= f(omega) near omega. Slopes are checked along every
// star generator; where a slope vanishes, the quadratic term is checked along
// the generator, and negative semidefiniteness is enforced on the zero-slope
// subspace of each cell.
LocalMaxReport is_local_max(const PiecewiseFunction& f, const QVec& omega);

struct CellConstancyProof {
    int cell;           // weighted cell containing omega
    bool gradient_vanishes = false; // on the cell's tangent space
    bool hessian_vanishes = false;  // restricted to the cell's tangent space
};

struct MaxPrincipleVerdict {
    enum class Status { LocallyConstant, NotLocallyConstant, NotLocalMax, NotPsh };
    Status status = Status::LocallyConstant;
    std::optional<PshReport> psh;            // present when NotPsh
    std::optional<LocalMaxReport> local_max; // present when NotLocalMax
    std::vector<CellConstancyProof> constancy; // per-cell certificate when LocallyConstant
    QVec witness_point;      // NotLocallyConstant: a point with a differing value
    Rational witness_value;  // f(witness_point)
    Rational base_value;     // f(omega)
};

// The tropical maximum principle, checked at omega: psh + local max must
// force local constancy. A NotLocallyConstant outcome on psh input with a
// certified local maximum would contradict the theorem.
MaxPrincipleVerdict verify_max_principle(const PiecewiseFunction& f, const QVec& omega);

struct SlicingTrace {
    enum class Status { Completed, NotBalanced, NotPsh, NotLocalMax };

    struct Edge {
        long long weight;
        QVec direction;  // primitive outgoing direction
        Rational slope;  // df/dt at 0 along the direction
    };

    struct Node {
        int dimension = -1;
        TropicalCycle cycle;
        PiecewiseFunction func;
        bool leaf = false;               // dimension <= 1 slope analysis
        std::vector<Edge> edges;         // leaf payload
        bool constant_at_scale = false;  // no witness value found
        long long search_height = 0;     // denominator bound of the witness search
        QVec witness_point;                // witness point with f != 0 (when found)
        Rational witness_value;
        RationalHyperplane hyperplane;   // sampled through 0 and the witness
        GenericityCertificate certificate;
        std::uint64_t sample_seed = 0;
        int child = -1;
    };

    Status status = Status::Completed;
    std::vector<Node> nodes; // nodes[0] is the root when present
};

// Machine-checkable rendition of the inductive proof of the tropical maximum
// principle on a fan: base case d <= 1 records outgoing slopes, the step
// slices by a sampled generic linear hyperplane through a witness point.
// Requires: an effective balanced fan centered at 0, affine pieces, f(0) = 0.
SlicingTrace slicing_trace(const TropicalCycle& fan, const PiecewiseFunction& f,
                           std::uint64_t seed);

struct TraceCheck {
    bool ok = true;
    std::string reason;
};

// Independently re-checks every fact a trace asserts: balancing and psh-ness
// at every node, genericity certificates, the dimension ladder, slice
// equality, and the leaf slope analysis.
TraceCheck verify_trace(const SlicingTrace& trace);

} // namespace tropkit
