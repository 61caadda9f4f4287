#include "tropkit/maxprinciple.hpp"

#include <cassert>

#include "tropkit/errors.hpp"

namespace tropkit {

namespace {

// Outgoing directions spanning the star cone of a cell at a point.
QMat star_generators(const Polyhedron& cone) {
    QMat gens = cone.rays;
    for (const auto& l : cone.lineality) {
        gens.push_back(l);
        gens.push_back(neg(l));
    }
    return gens;
}

// Basis of {v in rowspace(span) : a.v = 0}.
QMat zero_slope_subspace(const QMat& span, const QVec& a) {
    if (span.empty()) return {};
    QVec slopes(span.size());
    bool all_zero = true;
    for (std::size_t i = 0; i < span.size(); ++i) {
        slopes[i] = dot(a, span[i]);
        all_zero = all_zero && slopes[i].is_zero();
    }
    if (all_zero) return span;
    const QMat coeffs = q_kernel({slopes}, static_cast<int>(span.size()));
    QMat out;
    for (const auto& c : coeffs) {
        QVec v = zero_vec(static_cast<int>(span[0].size()));
        for (std::size_t i = 0; i < span.size(); ++i) v = add(v, scale(span[i], c[i]));
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

LocalMaxReport is_local_max(const PiecewiseFunction& f, const QVec& omega) {
    const TropicalCycle& c = *f.cycle;
    if (!c.complex.supports(omega)) throw PointNotOnSupport();
    LocalMaxReport rep;
    rep.point = omega;
    for (const auto& [i, w] : c.weights) {
        const Polyhedron& cell = c.cell(i);
        if (!cell.contains(omega)) continue;
        const QuadraticForm& piece = f.piece(i);
        const QVec a = piece.gradient(omega);
        const Polyhedron cone = tangent_cone(cell, omega);
        for (const auto& g : star_generators(cone)) {
            const Rational s = dot(a, g);
            const Rational q = dot(g, piece.hessian_times(g));
            if (s.sign() > 0 || (s.is_zero() && q.sign() > 0)) {
                rep.is_local_max = false;
                rep.blocking = LocalMaxBlocking{i, g, s, q};
                return rep;
            }
        }
        if (!piece.is_affine()) {
            // Negative semidefiniteness on the zero-slope subspace of the cell.
            const QMat w_basis = zero_slope_subspace(linear_span_rows(cell), a);
            if (!w_basis.empty()) {
                const std::size_t k = w_basis.size();
                QMat m(k, QVec(k));
                for (std::size_t p = 0; p < k; ++p)
                    for (std::size_t q2 = 0; q2 < k; ++q2)
                        m[p][q2] = -dot(w_basis[p], piece.hessian_times(w_basis[q2]));
                const PsdResult nsd = psd_check(m);
                if (!nsd.psd) {
                    QVec dir = zero_vec(c.complex.ambient_dim);
                    for (std::size_t p = 0; p < k; ++p)
                        dir = add(dir, scale(w_basis[p], nsd.witness[p]));
                    rep.is_local_max = false;
                    rep.blocking = LocalMaxBlocking{i, std::move(dir), Rational(0), -nsd.value};
                    return rep;
                }
            }
        }
    }
    return rep;
}

MaxPrincipleVerdict verify_max_principle(const PiecewiseFunction& f, const QVec& omega) {
    const TropicalCycle& c = *f.cycle;
    if (!c.complex.supports(omega)) throw PointNotOnSupport();
    MaxPrincipleVerdict verdict;
    verdict.base_value = evaluate(f, omega);

    const PshReport psh = check_psh(f);
    if (!psh.verdict) {
        verdict.status = MaxPrincipleVerdict::Status::NotPsh;
        verdict.psh = psh;
        return verdict;
    }
    const LocalMaxReport lm = is_local_max(f, omega);
    if (!lm.is_local_max) {
        verdict.status = MaxPrincipleVerdict::Status::NotLocalMax;
        verdict.local_max = lm;
        return verdict;
    }
    // Certify constancy on the star: every piece must have vanishing gradient
    // and Hessian on its cell's tangent space; by affineness/quadraticity this
    // is equivalent to constancy on a neighborhood of omega in the cell.
    for (const auto& [i, w] : c.weights) {
        const Polyhedron& cell = c.cell(i);
        if (!cell.contains(omega)) continue;
        const QuadraticForm& piece = f.piece(i);
        const QVec a = piece.gradient(omega);
        const QMat span = linear_span_rows(cell);
        CellConstancyProof proof{i, true, true};
        for (const auto& s : span)
            if (!dot(a, s).is_zero()) { proof.gradient_vanishes = false; break; }
        for (std::size_t p = 0; p < span.size() && proof.hessian_vanishes; ++p)
            for (std::size_t q = p; q < span.size(); ++q)
                if (!dot(span[p], piece.hessian_times(span[q])).is_zero()) {
                    proof.hessian_vanishes = false;
                    break;
                }
        if (proof.gradient_vanishes && proof.hessian_vanishes) {
            verdict.constancy.push_back(proof);
            continue;
        }
        // Non-constant on this cell: produce the witness point.
        QuadraticForm h = piece;
        h.constant = h.constant - verdict.base_value;
        const auto [pt, delta] = nonvanishing_point(h, cell);
        verdict.status = MaxPrincipleVerdict::Status::NotLocallyConstant;
        verdict.witness_point = pt;
        verdict.witness_value = delta + verdict.base_value;
        verdict.constancy.clear();
        return verdict;
    }
    verdict.status = MaxPrincipleVerdict::Status::LocallyConstant;
    return verdict;
}

namespace {

SlicingTrace::Node make_root_node(const TropicalCycle& fan, const PiecewiseFunction& f) {
    SlicingTrace::Node node;
    node.dimension = fan.dim;
    node.cycle = fan;
    node.func = f;
    return node;
}

void check_fan_input(const TropicalCycle& fan, const PiecewiseFunction& f) {
    for (const auto& [i, w] : fan.weights) {
        if (!fan.cell(i).is_cone())
            throw ParseError("slicing trace requires a fan centered at the origin");
        if (!f.piece(i).is_affine())
            throw TropkitError("slicing trace handles affine pieces only");
    }
    if (!fan.is_effective())
        throw TropkitError("slicing trace requires an effective cycle");
    const QVec zero = zero_vec(fan.complex.ambient_dim);
    if (!evaluate(f, zero).is_zero()) throw ParseError("slicing trace requires f(0) = 0");
}

// Deterministic witness search: a linear function on a cone is nonzero iff it
// is nonzero at a generator, so scanning generators in canonical order is a
// complete height-ordered enumeration for the affine class.
std::optional<std::pair<QVec, Rational>> find_witness(const TropicalCycle& fan,
                                                      const PiecewiseFunction& f) {
    for (const auto& [i, w] : fan.weights) {
        const Polyhedron& cell = fan.cell(i);
        for (const auto& g : star_generators(cell)) {
            const Rational v = f.piece(i).eval(g);
            if (!v.is_zero()) return std::make_pair(g, v);
        }
    }
    return std::nullopt;
}

std::vector<SlicingTrace::Edge> leaf_edges(const TropicalCycle& fan,
                                           const PiecewiseFunction& f) {
    std::vector<SlicingTrace::Edge> edges;
    for (const auto& [i, w] : fan.weights) {
        const Polyhedron& cell = fan.cell(i);
        if (cell.dim != 1) continue;
        for (const auto& g : star_generators(cell)) {
            const Rational slope = dot(f.piece(i).linear, g);
            edges.push_back({w, g, slope});
        }
    }
    return edges;
}

int build_trace(SlicingTrace& trace, const TropicalCycle& fan, const PiecewiseFunction& f,
                std::uint64_t seed, int depth) {
    const int idx = static_cast<int>(trace.nodes.size());
    trace.nodes.push_back(make_root_node(fan, f));
    if (fan.dim <= 1) {
        auto edges = leaf_edges(fan, f);
        // The base case of the induction: psh gives sum m_e s_e >= 0, the
        // local maximum gives s_e <= 0, so every outgoing slope vanishes.
        Rational weighted_sum;
        for (const auto& e : edges) {
            if (e.slope.sign() > 0)
                throw TropkitError("leaf slope positive despite a certified local maximum");
            weighted_sum += Rational(e.weight) * e.slope;
        }
        if (weighted_sum.sign() < 0)
            throw TropkitError("leaf corner weight negative despite psh certification");
        for (const auto& e : edges)
            if (!e.slope.is_zero())
                throw TropkitError("nonzero leaf slope: contradiction with the base case");
        trace.nodes[static_cast<std::size_t>(idx)].leaf = true;
        trace.nodes[static_cast<std::size_t>(idx)].edges = std::move(edges);
        trace.nodes[static_cast<std::size_t>(idx)].constant_at_scale = true;
        return idx;
    }
    const auto witness = find_witness(fan, f);
    trace.nodes[static_cast<std::size_t>(idx)].search_height = 64;
    if (!witness) {
        trace.nodes[static_cast<std::size_t>(idx)].constant_at_scale = true;
        return idx;
    }
    const QVec zero = zero_vec(fan.complex.ambient_dim);
    const std::uint64_t node_seed = seed + static_cast<std::uint64_t>(depth);
    const SampledHyperplane s =
        sample_generic_hyperplane(fan, {zero, witness->first}, node_seed);
    TropicalCycle sliced = stable_intersect(fan, s.hyperplane);
    if (sliced.is_zero()) throw TropkitError("slicing lost the witness point");
    PiecewiseFunction fprime = restrict_to(f, sliced);
    if (!check_psh(fprime).verdict)
        throw TropkitError("restriction to the slice is not psh: projection formula violated");
    {
        auto& node = trace.nodes[static_cast<std::size_t>(idx)];
        node.witness_point = witness->first;
        node.witness_value = witness->second;
        node.hyperplane = s.hyperplane;
        node.certificate = s.certificate;
        node.sample_seed = node_seed;
    }
    const int child = build_trace(trace, sliced, fprime, seed, depth + 1);
    trace.nodes[static_cast<std::size_t>(idx)].child = child;
    return idx;
}

} // namespace

SlicingTrace slicing_trace(const TropicalCycle& fan, const PiecewiseFunction& f,
                           std::uint64_t seed) {
    check_fan_input(fan, f);
    SlicingTrace trace;
    if (!check_balancing(fan).balanced) {
        trace.status = SlicingTrace::Status::NotBalanced;
        trace.nodes.push_back(make_root_node(fan, f));
        return trace;
    }
    if (!check_psh(f).verdict) {
        trace.status = SlicingTrace::Status::NotPsh;
        trace.nodes.push_back(make_root_node(fan, f));
        return trace;
    }
    const QVec zero = zero_vec(fan.complex.ambient_dim);
    if (!is_local_max(f, zero).is_local_max) {
        trace.status = SlicingTrace::Status::NotLocalMax;
        trace.nodes.push_back(make_root_node(fan, f));
        return trace;
    }
    build_trace(trace, fan, f, seed, 0);
    trace.status = SlicingTrace::Status::Completed;
    return trace;
}

namespace {

TraceCheck fail(const std::string& why) { return {false, why}; }

} // namespace

TraceCheck verify_trace(const SlicingTrace& trace) {
    if (trace.nodes.empty()) return fail("empty trace");
    const auto& root = trace.nodes[0];
    const QVec zero = zero_vec(root.cycle.complex.ambient_dim);
    switch (trace.status) {
    case SlicingTrace::Status::NotBalanced:
        if (check_balancing(root.cycle).balanced) return fail("NotBalanced claim is false");
        return {};
    case SlicingTrace::Status::NotPsh:
        if (!check_balancing(root.cycle).balanced) return fail("NotPsh on unbalanced input");
        if (check_psh(root.func).verdict) return fail("NotPsh claim is false");
        return {};
    case SlicingTrace::Status::NotLocalMax:
        if (!check_psh(root.func).verdict) return fail("NotLocalMax on non-psh input");
        if (is_local_max(root.func, zero).is_local_max) return fail("NotLocalMax claim is false");
        return {};
    case SlicingTrace::Status::Completed:
        break;
    }
    for (std::size_t i = 0; i < trace.nodes.size(); ++i) {
        const auto& node = trace.nodes[i];
        const QVec z = zero_vec(node.cycle.complex.ambient_dim);
        if (node.cycle.dim != node.dimension) return fail("node dimension mismatch");
        if (!node.cycle.is_effective()) return fail("node cycle not effective");
        if (!check_balancing(node.cycle).balanced) return fail("node cycle not balanced");
        if (!check_psh(node.func).verdict) return fail("node function not psh");
        if (!is_local_max(node.func, z).is_local_max) return fail("node lost the local maximum");
        if (!evaluate(node.func, z).is_zero()) return fail("node function nonzero at 0");
        if (node.leaf) {
            if (node.dimension > 1) return fail("leaf with dimension > 1");
            auto expected = leaf_edges(node.cycle, node.func);
            if (expected.size() != node.edges.size()) return fail("leaf edge count mismatch");
            for (std::size_t e = 0; e < expected.size(); ++e) {
                if (expected[e].weight != node.edges[e].weight ||
                    expected[e].direction != node.edges[e].direction ||
                    expected[e].slope != node.edges[e].slope)
                    return fail("leaf edge data mismatch");
                if (!node.edges[e].slope.is_zero()) return fail("leaf slope not zero");
            }
            continue;
        }
        if (node.constant_at_scale) {
            for (const auto& [ci, w] : node.cycle.weights) {
                const Polyhedron& cell = node.cycle.cell(ci);
                for (const auto& g : star_generators(cell))
                    if (!node.func.piece(ci).eval(g).is_zero())
                        return fail("constant-at-scale node has a nonzero generator value");
            }
            if (node.child != -1) return fail("constant node with a child");
            continue;
        }
        // Recursive node: re-check the witness, the certificate, and the slice.
        if (node.child < 0 || node.child >= static_cast<int>(trace.nodes.size()))
            return fail("missing child");
        const auto& child = trace.nodes[static_cast<std::size_t>(node.child)];
        if (child.dimension != node.dimension - 1) return fail("dimension ladder broken");
        if (!node.certificate.generic) return fail("stored certificate not generic");
        const GenericityCertificate cert = is_generic(node.cycle, node.hyperplane);
        if (!cert.generic) return fail("hyperplane fails genericity on re-check");
        if (!node.hyperplane.offset.is_zero()) return fail("hyperplane not linear");
        if (!node.hyperplane.contains(node.witness_point)) return fail("witness not on the hyperplane");
        if (!node.cycle.complex.supports(node.witness_point)) return fail("witness off support");
        if (evaluate(node.func, node.witness_point) != node.witness_value)
            return fail("witness value mismatch");
        if (node.witness_value.is_zero()) return fail("witness value is zero");
        const TropicalCycle resliced = stable_intersect(node.cycle, node.hyperplane);
        if (!cycles_equal_weighted(resliced, child.cycle)) return fail("slice mismatch");
        // The child function is the restriction of the parent's.
        for (const auto& [ci, w] : child.cycle.weights) {
            const Polyhedron& cell = child.cycle.cell(ci);
            const QVec p = relative_interior_point(cell);
            if (evaluate(node.func, p) != child.func.piece(ci).eval(p))
                return fail("restriction value mismatch");
            for (const auto& g : star_generators(cell)) {
                const QVec q = add(p, g);
                if (evaluate(node.func, q) != child.func.piece(ci).eval(q))
                    return fail("restriction slope mismatch");
            }
        }
    }
    return {};
}

} // namespace tropkit
