#pragma once

#include <cstdint>
#include <vector>

#include "tropkit/plfunc.hpp"

namespace tropkit {

// {x : normal.x = offset} with primitive integer normal.
struct RationalHyperplane {
    ZVec normal;
    Rational offset;

    AffineForm form() const { return AffineForm(to_qvec(normal), -offset); }
    bool contains(const QVec& x) const { return dot(to_qvec(normal), x) == offset; }
};

RationalHyperplane make_hyperplane(const QVec& normal, const Rational& offset);

struct GenericityCertificate {
    bool generic = true;
    std::vector<int> offenders; // positive-dimensional cells contained in H
};

// H is generic for C iff no cell of dimension >= 1 lies inside H.
GenericityCertificate is_generic(const TropicalCycle& c, const RationalHyperplane& h);

// Stable intersection H.C, realized as the corner locus of max(l - c, 0).
// Requires C balanced, H generic, dim >= 1. Throws NotGeneric/NotBalanced.
TropicalCycle stable_intersect(const TropicalCycle& c, const RationalHyperplane& h);

// Exact support comparison |H.C| = |C| ∩ H (diagnostic; guaranteed by the
// theory for effective balanced inputs whose support meets H beyond isolated
// vertices).
bool slice_support_equals(const TropicalCycle& c, const RationalHyperplane& h,
                          const TropicalCycle& sliced);

struct SampledHyperplane {
    RationalHyperplane hyperplane;
    GenericityCertificate certificate;
    int iterations = 0;
    long long height = 0;
};

// Deterministic seeded rejection sampling of a generic hyperplane through up
// to two prescribed rational points. Heights start at 8 and double every 32
// rejections; throws Exhausted after 4096 draws.
SampledHyperplane sample_generic_hyperplane(const TropicalCycle& c,
                                            const std::vector<QVec>& through,
                                            std::uint64_t seed);

inline constexpr int kSampleMaxIterations = 4096;

} // namespace tropkit
