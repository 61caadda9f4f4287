#include "tropkit/cycle.hpp"

#include <algorithm>
#include <cassert>

#include "tropkit/errors.hpp"

namespace tropkit {

bool TropicalCycle::is_effective() const {
    for (const auto& [i, w] : weights)
        if (w <= 0) return false;
    return true;
}

bool TropicalCycle::is_pure() const {
    for (const auto& [i, w] : weights)
        if (cell(i).dim != dim) return false;
    return true;
}

std::vector<int> TropicalCycle::weighted_cells() const {
    std::vector<int> out;
    out.reserve(weights.size());
    for (const auto& [i, w] : weights) out.push_back(i);
    return out;
}

TropicalCycle make_cycle(int n, const std::vector<std::pair<Polyhedron, long long>>& weighted,
                         std::vector<std::string>* warnings, bool validate) {
    std::vector<Polyhedron> keep;
    std::vector<long long> keep_w;
    for (const auto& [cell, w] : weighted) {
        if (cell.is_empty()) continue;
        if (w == 0) {
            if (warnings) warnings->push_back("pruned cell with weight 0: " + cell.key());
            continue;
        }
        keep.push_back(cell);
        keep_w.push_back(w);
    }
    TropicalCycle cyc;
    if (keep.empty()) {
        cyc.complex.ambient_dim = n;
        cyc.dim = -1;
        return cyc;
    }
    ComplexBuildReport rep;
    cyc.complex = validate ? validate_complex(n, keep, &rep) : build_complex_unchecked(n, keep);
    for (std::size_t i = 0; i < keep.size(); ++i) {
        const int idx = cyc.complex.find_cell(keep[i]);
        assert(idx >= 0);
        auto [it, fresh] = cyc.weights.emplace(idx, keep_w[i]);
        if (!fresh) it->second += keep_w[i]; // duplicate cells accumulate
    }
    for (auto it = cyc.weights.begin(); it != cyc.weights.end();) {
        if (it->second == 0) {
            if (warnings) warnings->push_back("weights cancelled on a duplicated cell");
            it = cyc.weights.erase(it);
        } else {
            ++it;
        }
    }
    // A weighted cell must be maximal; a weight on a proper face is an input error.
    for (const auto& [i, w] : cyc.weights) {
        if (std::find(cyc.complex.maximal.begin(), cyc.complex.maximal.end(), i) ==
            cyc.complex.maximal.end())
            throw ParseError("weighted cell is a proper face of another cell");
    }
    // Unweighted maximal cells (possible when inputs nest) are dropped by
    // rebuilding from the weighted cells only.
    if (cyc.weights.size() != cyc.complex.maximal.size()) {
        std::vector<std::pair<Polyhedron, long long>> reduced;
        for (const auto& [i, w] : cyc.weights) reduced.emplace_back(cyc.cell(i), w);
        return make_cycle(n, reduced, warnings, false);
    }
    cyc.dim = -1;
    for (const auto& [i, w] : cyc.weights) cyc.dim = std::max(cyc.dim, cyc.cell(i).dim);
    return cyc;
}

BalancingReport check_balancing(const TropicalCycle& c) {
    if (!c.is_pure()) throw NotPure();
    BalancingReport rep;
    if (c.is_zero() || c.dim <= 0) return rep; // no codim-1 faces to check
    // Collect adjacency: codim-1 cell -> weighted cells having it as a facet.
    std::map<int, std::vector<int>> above;
    for (const auto& [sigma, w] : c.weights)
        for (int tau : c.complex.facets_of[static_cast<std::size_t>(sigma)])
            above[tau].push_back(sigma);
    for (const auto& [tau, sigmas] : above) {
        const Polyhedron& tau_cell = c.cell(tau);
        ZVec excess(static_cast<std::size_t>(c.complex.ambient_dim), Int(0));
        for (int sigma : sigmas) {
            const ZVec u = lattice_normal_vector(c.cell(sigma), tau_cell);
            const Int m(static_cast<long>(c.weights.at(sigma)));
            for (std::size_t j = 0; j < excess.size(); ++j) excess[j] += m * u[j];
        }
        ZVec residual = reduce_mod_lattice(std::move(excess), span_lattice(tau_cell));
        ++rep.faces_checked;
        if (!is_zero_zvec(residual)) {
            rep.balanced = false;
            rep.violations.push_back({tau, std::move(residual)});
        }
    }
    return rep;
}

TropicalCycle star(const TropicalCycle& c, const QVec& omega) {
    if (!c.complex.supports(omega)) throw PointNotOnSupport();
    std::vector<std::pair<Polyhedron, long long>> cones;
    for (const auto& [i, w] : c.weights) {
        const Polyhedron& sigma = c.cell(i);
        if (!sigma.contains(omega)) continue;
        cones.emplace_back(tangent_cone(sigma, omega), w);
    }
    assert(!cones.empty());
    return make_cycle(c.complex.ambient_dim, cones);
}

LocalDimension local_dimension(const TropicalCycle& c, const QVec& omega) {
    const TropicalCycle st = star(c, omega);
    LocalDimension out;
    for (const auto& [i, w] : st.weights) {
        const int d = st.cell(i).dim;
        if (out.min_dim < 0 || d < out.min_dim) out.min_dim = d;
        out.max_dim = std::max(out.max_dim, d);
    }
    out.is_pure = out.min_dim == out.max_dim;
    return out;
}

bool cycles_equal_weighted(const TropicalCycle& a, const TropicalCycle& b) {
    if (a.is_zero() && b.is_zero()) return true;
    if (a.is_zero() != b.is_zero()) return false;
    if (a.dim != b.dim) return false;
    std::vector<Polyhedron> cells_a, cells_b;
    for (const auto& [i, w] : a.weights) cells_a.push_back(a.cell(i));
    for (const auto& [i, w] : b.weights) cells_b.push_back(b.cell(i));
    // Weights must agree wherever supports overlap in full dimension.
    for (const auto& [i, wa] : a.weights)
        for (const auto& [j, wb] : b.weights) {
            if (wa == wb) continue;
            const Polyhedron meet = intersect(a.cell(i), b.cell(j));
            if (meet.dim == a.dim) return false;
        }
    for (const auto& pa : cells_a)
        if (!union_contains(pa, cells_b)) return false;
    for (const auto& pb : cells_b)
        if (!union_contains(pb, cells_a)) return false;
    return true;
}

namespace {

// Splits a cell along {form = 0}, keeping only full-dimensional pieces.
// Returns {cell} untouched when the form does not cut it.
std::vector<Polyhedron> split_cell(const Polyhedron& cell, const AffineForm& form) {
    int pos = 0, zero_or = 0, negs = 0;
    for (const auto& v : cell.vertices) {
        const int s = form.eval(v).sign();
        (s > 0 ? pos : s < 0 ? negs : zero_or) += 1;
    }
    bool ray_pos = false, ray_neg = false;
    for (const auto& r : cell.rays) {
        const int s = dot(form.linear, r).sign();
        ray_pos = ray_pos || s > 0;
        ray_neg = ray_neg || s < 0;
    }
    for (const auto& l : cell.lineality) {
        const int s = dot(form.linear, l).sign();
        ray_pos = ray_pos || s != 0;
        ray_neg = ray_neg || s != 0;
    }
    const bool has_pos = pos > 0 || ray_pos;
    const bool has_neg = negs > 0 || ray_neg;
    if (!has_neg || !has_pos) return {cell}; // one closed side contains the cell
    std::vector<Polyhedron> out;
    Polyhedron plus = intersect_with_halfspace(cell, form);
    Polyhedron minus =
        intersect_with_halfspace(cell, AffineForm(neg(form.linear), -form.constant));
    if (plus.dim == cell.dim) out.push_back(std::move(plus));
    if (minus.dim == cell.dim) out.push_back(std::move(minus));
    assert(!out.empty());
    return out;
}

} // namespace

TropicalCycle refine_cycle_by_forms(const TropicalCycle& c, const std::vector<AffineForm>& forms) {
    if (!c.is_pure()) throw NotPure();
    if (c.is_zero()) return c;
    std::vector<std::pair<Polyhedron, long long>> pieces;
    for (const auto& [i, w] : c.weights) {
        std::vector<Polyhedron> stack{c.cell(i)};
        for (const auto& f : forms) {
            if (f.is_zero() || is_zero_vec(f.linear)) continue;
            std::vector<Polyhedron> next;
            for (const auto& p : stack) {
                auto split = split_cell(p, f);
                next.insert(next.end(), std::make_move_iterator(split.begin()),
                            std::make_move_iterator(split.end()));
            }
            stack = std::move(next);
        }
        for (auto& p : stack) pieces.emplace_back(std::move(p), w);
    }
    TropicalCycle out = make_cycle(c.complex.ambient_dim, pieces);
    assert(out.dim == c.dim);
    return out;
}

TropicalCycle scale_cycle(const TropicalCycle& c, long long k) {
    assert(k != 0);
    TropicalCycle out = c;
    for (auto& [i, w] : out.weights) w *= k;
    return out;
}

} // namespace tropkit
