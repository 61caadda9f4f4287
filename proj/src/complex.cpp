#include "tropkit/complex.hpp"

#include <algorithm>
#include <cassert>
#include <map>

#include "tropkit/errors.hpp"

namespace tropkit {

int PolyhedralComplex::find_cell(const Polyhedron& p) const {
    const std::string k = p.key();
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i].key() == k) return static_cast<int>(i);
    return -1;
}

std::vector<int> PolyhedralComplex::cells_containing(const QVec& x) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (cells[i].contains(x)) out.push_back(static_cast<int>(i));
    return out;
}

bool PolyhedralComplex::supports(const QVec& x) const {
    for (int i : maximal)
        if (cells[static_cast<std::size_t>(i)].contains(x)) return true;
    return false;
}

std::vector<int> PolyhedralComplex::maximal_above(int i) const {
    std::vector<int> out;
    const auto& c = cells[static_cast<std::size_t>(i)];
    for (int m : maximal)
        if (m == i || cells[static_cast<std::size_t>(m)].contains_poly(c)) out.push_back(m);
    return out;
}

namespace {

PolyhedralComplex index_cells(int n, std::map<std::string, Polyhedron> by_key) {
    PolyhedralComplex cx;
    cx.ambient_dim = n;
    cx.cells.reserve(by_key.size());
    for (auto& [k, c] : by_key) cx.cells.push_back(std::move(c));
    std::sort(cx.cells.begin(), cx.cells.end(), [](const Polyhedron& a, const Polyhedron& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.key() < b.key();
    });
    cx.facets_of.assign(cx.cells.size(), {});
    for (std::size_t i = 0; i < cx.cells.size(); ++i)
        for (std::size_t j = 0; j < cx.cells.size(); ++j) {
            if (cx.cells[j].dim != cx.cells[i].dim - 1) continue;
            if (cx.cells[i].contains_poly(cx.cells[j]))
                cx.facets_of[i].push_back(static_cast<int>(j));
        }
    for (std::size_t i = 0; i < cx.cells.size(); ++i) {
        bool top = true;
        for (std::size_t j = 0; j < cx.cells.size() && top; ++j) {
            if (i == j || cx.cells[j].dim <= cx.cells[i].dim) continue;
            if (cx.cells[j].contains_poly(cx.cells[i])) top = false;
        }
        // Equal-dimension containment cannot occur between distinct cells.
        if (top) cx.maximal.push_back(static_cast<int>(i));
    }
    return cx;
}

std::map<std::string, Polyhedron> close_under_faces(const std::vector<Polyhedron>& cells,
                                                    std::size_t* added) {
    std::map<std::string, Polyhedron> by_key;
    std::vector<std::string> input_keys;
    for (const auto& c : cells) {
        if (c.is_empty()) continue;
        input_keys.push_back(c.key());
        by_key.emplace(c.key(), c);
    }
    const std::size_t before = by_key.size();
    for (const auto& c : cells) {
        if (c.is_empty()) continue;
        for (const auto& f : face_lattice(c).all_nonempty())
            by_key.emplace(f.key(), f);
    }
    if (added) *added = by_key.size() - before;
    return by_key;
}

} // namespace

PolyhedralComplex validate_complex(int n, const std::vector<Polyhedron>& cells,
                                   ComplexBuildReport* report) {
    for (const auto& c : cells)
        if (!c.is_empty() && c.ambient_dim != n)
            throw ParseError("cell ambient dimension mismatch");
    // Pairwise intersection axiom on the input cells; closure preserves it.
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
            if (cells[i].is_empty() || cells[j].is_empty()) continue;
            const Polyhedron meet = intersect(cells[i], cells[j]);
            if (meet.is_empty()) continue;
            if (!is_face_of(meet, cells[i]) || !is_face_of(meet, cells[j]))
                throw IntersectionAxiomViolated(static_cast<int>(i), static_cast<int>(j));
        }
    }
    std::size_t added = 0;
    auto by_key = close_under_faces(cells, &added);
    if (report) {
        report->input_cells = cells.size();
        report->added_faces = added;
    }
    return index_cells(n, std::move(by_key));
}

PolyhedralComplex build_complex_unchecked(int n, const std::vector<Polyhedron>& cells) {
    std::size_t added = 0;
    auto by_key = close_under_faces(cells, &added);
    return index_cells(n, std::move(by_key));
}

} // namespace tropkit
