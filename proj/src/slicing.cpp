#include "tropkit/slicing.hpp"

#include <cassert>

#include "tropkit/errors.hpp"

namespace tropkit {

RationalHyperplane make_hyperplane(const QVec& normal, const Rational& offset) {
    const ZVec prim = primitive(normal); // throws ZeroVector on zero input
    // Rescale the offset consistently with the normal.
    std::size_t j = 0;
    while (normal[j].is_zero()) ++j;
    const Rational factor = Rational(prim[j]) / normal[j];
    return RationalHyperplane{prim, offset * factor};
}

GenericityCertificate is_generic(const TropicalCycle& c, const RationalHyperplane& h) {
    GenericityCertificate cert;
    const QVec nq = to_qvec(h.normal);
    for (std::size_t i = 0; i < c.complex.cells.size(); ++i) {
        const Polyhedron& cell = c.complex.cells[i];
        if (cell.dim < 1) continue;
        bool inside = true;
        for (const auto& v : cell.vertices)
            if (dot(nq, v) != h.offset) { inside = false; break; }
        if (inside)
            for (const auto& r : cell.rays)
                if (!dot(nq, r).is_zero()) { inside = false; break; }
        if (inside)
            for (const auto& l : cell.lineality)
                if (!dot(nq, l).is_zero()) { inside = false; break; }
        if (inside) {
            cert.generic = false;
            cert.offenders.push_back(static_cast<int>(i));
        }
    }
    return cert;
}

TropicalCycle stable_intersect(const TropicalCycle& c, const RationalHyperplane& h) {
    if (c.dim < 1) throw TropkitError("stable intersection requires dimension >= 1");
    if (!check_balancing(c).balanced) throw NotBalanced();
    if (!is_generic(c, h).generic) throw NotGeneric();
    TropicalPolynomial g;
    g.mode = TropicalPolynomial::Mode::Max;
    g.terms.emplace_back(to_qvec(h.normal), -h.offset);
    g.terms.emplace_back(zero_vec(c.complex.ambient_dim), Rational(0));
    auto [refined, f] = refine(c, g);
    const CornerLocus corner = corner_locus(f);
    TropicalCycle out = corner.as_cycle(); // integral: primitive normal, integer weights
    assert(out.dim == c.dim - 1);
    // Support containment |H.C| ⊆ |C| ∩ H holds by construction; verify the
    // cells landed inside H.
    for (const auto& [i, w] : out.weights)
        for (const auto& v : out.cell(i).vertices)
            assert(dot(to_qvec(h.normal), v) == h.offset);
    return out;
}

bool slice_support_equals(const TropicalCycle& c, const RationalHyperplane& h,
                          const TropicalCycle& sliced) {
    std::vector<Polyhedron> sliced_cells, source_cells;
    for (const auto& [i, w] : sliced.weights) sliced_cells.push_back(sliced.cell(i));
    for (const auto& [i, w] : c.weights) source_cells.push_back(c.cell(i));
    // |H.C| ⊆ |C| ∩ H
    const QVec nq = to_qvec(h.normal);
    for (const auto& cell : sliced_cells) {
        for (const auto& v : cell.vertices)
            if (dot(nq, v) != h.offset) return false;
        for (const auto& r : cell.rays)
            if (!dot(nq, r).is_zero()) return false;
        for (const auto& l : cell.lineality)
            if (!dot(nq, l).is_zero()) return false;
        if (!union_contains(cell, source_cells)) return false;
    }
    // |C| ∩ H ⊆ |H.C|
    for (const auto& cell : source_cells) {
        const Polyhedron meet = intersect_with_hyperplane(cell, h.form());
        if (meet.is_empty()) continue;
        if (!union_contains(meet, sliced_cells)) return false;
    }
    return true;
}

namespace {

struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

} // namespace

SampledHyperplane sample_generic_hyperplane(const TropicalCycle& c,
                                            const std::vector<QVec>& through,
                                            std::uint64_t seed) {
    const int n = c.complex.ambient_dim;
    if (n < 2) throw ParseError("hyperplane sampling needs ambient dimension >= 2");
    if (through.size() > 2) throw ParseError("at most two through-points supported");
    if (through.size() == 2 && through[0] == through[1])
        throw ParseError("through-points must be distinct");

    // Lattice of admissible normals: orthogonal to the difference of the
    // through-points (all of Z^n when fewer than two points are given).
    ZMat basis;
    if (through.size() == 2) {
        const ZVec diff = primitive(sub(through[1], through[0]));
        basis = z_kernel({diff}, n);
    } else {
        for (int i = 0; i < n; ++i) {
            ZVec e(static_cast<std::size_t>(n), Int(0));
            e[static_cast<std::size_t>(i)] = 1;
            basis.push_back(std::move(e));
        }
    }
    assert(!basis.empty());

    SplitMix64 rng{seed};
    for (int it = 0; it < kSampleMaxIterations; ++it) {
        const int doublings = std::min(it / 32, 24);
        const long long height = 8LL << doublings;
        ZVec normal(static_cast<std::size_t>(n), Int(0));
        for (const auto& b : basis) {
            const long long coeff =
                static_cast<long long>(rng.next() % static_cast<std::uint64_t>(2 * height + 1)) -
                height;
            const Int cz(static_cast<long>(coeff));
            for (int j = 0; j < n; ++j) normal[static_cast<std::size_t>(j)] += cz * b[static_cast<std::size_t>(j)];
        }
        if (is_zero_zvec(normal)) continue;
        RationalHyperplane h{primitive_z(normal), Rational(0)};
        if (!through.empty()) h.offset = dot(to_qvec(h.normal), through[0]);
        const GenericityCertificate cert = is_generic(c, h);
        if (cert.generic) {
            SampledHyperplane out;
            out.hyperplane = std::move(h);
            out.certificate = cert;
            out.iterations = it + 1;
            out.height = height;
            return out;
        }
    }
    throw Exhausted(kSampleMaxIterations);
}

} // namespace tropkit
