#include "tropkit/polyhedron.hpp"

#include <algorithm>
#include <atomic>
#include <bitset>
#include <cassert>
#include <map>
#include <set>
#include <sstream>

#include "tropkit/errors.hpp"

namespace tropkit {

namespace {

std::atomic<int> g_dim_guard{kDimGuard};

constexpr std::size_t kDDCap = 512; // internal capacity for tight-set bookkeeping

using Tight = std::bitset<kDDCap>;

struct DDRay {
    ZVec v;
    Tight tight;
};

struct DDCone {
    ZMat lineality;
    std::vector<DDRay> rays;
};

Int zdot(const ZVec& a, const ZVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Double-description method for the cone {y in R^d : c.y >= 0 for all rows c}.
// Maintains the exact set of extreme rays modulo the lineality space.
DDCone dd_cone(int d, const ZMat& constraints) {
    if (constraints.size() > kDDCap) throw ConstraintLimitExceeded(constraints.size());
    DDCone cone;
    for (int i = 0; i < d; ++i) {
        ZVec e(static_cast<std::size_t>(d), Int(0));
        e[static_cast<std::size_t>(i)] = 1;
        cone.lineality.push_back(std::move(e));
    }
    for (std::size_t ci = 0; ci < constraints.size(); ++ci) {
        const ZVec& a = constraints[ci];
        if (is_zero_zvec(a)) {
            for (auto& r : cone.rays) r.tight.set(ci);
            continue;
        }
        std::size_t lin_pivot = cone.lineality.size();
        for (std::size_t i = 0; i < cone.lineality.size(); ++i)
            if (zdot(a, cone.lineality[i]) != 0) { lin_pivot = i; break; }

        if (lin_pivot < cone.lineality.size()) {
            ZVec l = cone.lineality[lin_pivot];
            cone.lineality.erase(cone.lineality.begin() + static_cast<long>(lin_pivot));
            Int al = zdot(a, l);
            if (al < 0) { l = zneg(l); al = -al; }
            for (auto& m : cone.lineality) {
                const Int am = zdot(a, m);
                if (am == 0) continue;
                for (std::size_t j = 0; j < m.size(); ++j) m[j] = al * m[j] - am * l[j];
                m = primitive_z(m);
            }
            for (auto& r : cone.rays) {
                const Int ar = zdot(a, r.v);
                if (ar != 0) {
                    for (std::size_t j = 0; j < r.v.size(); ++j) r.v[j] = al * r.v[j] - ar * l[j];
                    r.v = primitive_z(r.v);
                }
                r.tight.set(ci);
            }
            DDRay nr;
            nr.v = primitive_z(l);
            for (std::size_t k = 0; k < ci; ++k) nr.tight.set(k);
            cone.rays.push_back(std::move(nr));
            continue;
        }

        // Ray-splitting step. All lineality directions lie in the hyperplane.
        std::vector<std::size_t> pos, zero, negs;
        std::vector<Int> vals(cone.rays.size());
        for (std::size_t i = 0; i < cone.rays.size(); ++i) {
            vals[i] = zdot(a, cone.rays[i].v);
            const int s = sgn(vals[i]);
            if (s > 0) pos.push_back(i);
            else if (s < 0) negs.push_back(i);
            else zero.push_back(i);
        }
        if (negs.empty()) {
            for (std::size_t i : zero) cone.rays[i].tight.set(ci);
            continue;
        }
        std::vector<DDRay> next;
        next.reserve(pos.size() + zero.size() + pos.size() * negs.size());
        for (std::size_t i : pos) next.push_back(cone.rays[i]);
        for (std::size_t i : zero) {
            next.push_back(cone.rays[i]);
            next.back().tight.set(ci);
        }
        const int quotient_dim = d - static_cast<int>(cone.lineality.size());
        for (std::size_t ip : pos) {
            for (std::size_t im : negs) {
                const Tight common = cone.rays[ip].tight & cone.rays[im].tight;
                // Combinatorial adjacency prefilter over the extreme-ray list.
                bool adjacent = true;
                for (std::size_t k = 0; k < cone.rays.size() && adjacent; ++k) {
                    if (k == ip || k == im) continue;
                    if ((cone.rays[k].tight & common) == common) adjacent = false;
                }
                if (!adjacent) continue;
                // Exact rank confirmation: the minimal common face must have
                // dimension lineality+2.
                QMat tight_rows;
                for (std::size_t k = 0; k < ci; ++k)
                    if (common.test(k)) tight_rows.push_back(to_qvec(constraints[k]));
                if (rank(std::move(tight_rows)) != quotient_dim - 2) continue;
                ZVec w(static_cast<std::size_t>(d));
                const Int& ap = vals[ip];
                const Int& am = vals[im];
                for (std::size_t j = 0; j < w.size(); ++j)
                    w[j] = ap * cone.rays[im].v[j] - am * cone.rays[ip].v[j];
                DDRay nr;
                nr.v = primitive_z(w);
                nr.tight = common;
                nr.tight.set(ci);
                next.push_back(std::move(nr));
            }
        }
        cone.rays = std::move(next);
    }
    return cone;
}

ZVec homogenize_form(const AffineForm& f) {
    QVec row = f.linear;
    row.push_back(f.constant);
    return primitive(row); // positive scaling, direction preserved
}

struct CanonicalGens {
    QMat vertices;
    QMat rays;      // primitive integer entries
    QMat lineality; // primitive integer entries, RREF-canonical
};

QVec reduce_by_lineality(QVec x, const QMat& lineality) {
    for (const auto& l : lineality) {
        std::size_t p = 0;
        while (p < l.size() && l[p].is_zero()) ++p;
        if (p == l.size()) continue;
        if (x[p].is_zero()) continue;
        const Rational f = x[p] / l[p];
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = x[j] - f * l[j];
    }
    return x;
}

CanonicalGens canonicalize_gens(QMat vertices, QMat rays, QMat lineality) {
    CanonicalGens out;
    out.lineality = row_space_basis(std::move(lineality));
    for (auto& v : vertices) v = reduce_by_lineality(std::move(v), out.lineality);
    std::sort(vertices.begin(), vertices.end(), lex_less);
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    out.vertices = std::move(vertices);
    QMat red_rays;
    red_rays.reserve(rays.size());
    for (auto& r : rays) {
        QVec q = reduce_by_lineality(std::move(r), out.lineality);
        if (is_zero_vec(q)) continue;
        red_rays.push_back(to_qvec(primitive(q)));
    }
    std::sort(red_rays.begin(), red_rays.end(), lex_less);
    red_rays.erase(std::unique(red_rays.begin(), red_rays.end()), red_rays.end());
    out.rays = std::move(red_rays);
    return out;
}

int dim_of_gens(const CanonicalGens& g) {
    if (g.vertices.empty()) return -1;
    QMat rows;
    for (std::size_t i = 1; i < g.vertices.size(); ++i)
        rows.push_back(sub(g.vertices[i], g.vertices[0]));
    for (const auto& r : g.rays) rows.push_back(r);
    for (const auto& l : g.lineality) rows.push_back(l);
    return rank(std::move(rows));
}

struct HRep {
    std::vector<AffineForm> equations;
    std::vector<AffineForm> inequalities;
};

AffineForm row_to_form_linear_primitive(const QVec& row) {
    // row has n+1 entries (linear | constant); scale so the linear part is
    // primitive integer. The linear part must be nonzero.
    const std::size_t n = row.size() - 1;
    QVec lin(row.begin(), row.begin() + static_cast<long>(n));
    const ZVec prim = primitive(lin);
    std::size_t j = 0;
    while (lin[j].is_zero()) ++j;
    const Rational factor = Rational(prim[j]) / lin[j];
    QVec out_lin = to_qvec(prim);
    return AffineForm(std::move(out_lin), row[n] * factor);
}

bool form_lex_less(const AffineForm& a, const AffineForm& b) {
    if (a.linear != b.linear) return lex_less(a.linear, b.linear);
    return a.constant < b.constant;
}

// H-representation of the polyhedron from canonical generators, by duality:
// valid forms a.x + c >= 0 are exactly the dual cone of the homogenized
// generator cone.
HRep dualize(int n, const CanonicalGens& g) {
    ZMat constraints;
    for (const auto& v : g.vertices) {
        QVec row = v;
        row.push_back(Rational(1));
        constraints.push_back(primitive(row));
    }
    for (const auto& r : g.rays) {
        QVec row = r;
        row.push_back(Rational(0));
        constraints.push_back(primitive(row));
    }
    for (const auto& l : g.lineality) {
        QVec row = l;
        row.push_back(Rational(0));
        ZVec z = primitive(row);
        constraints.push_back(z);
        constraints.push_back(zneg(z));
    }
    const DDCone dual = dd_cone(n + 1, constraints);

    HRep h;
    // Lineality of the dual cone = implicit equations of P.
    QMat eq_rows;
    for (const auto& l : dual.lineality) eq_rows.push_back(to_qvec(l));
    rref(eq_rows);
    while (!eq_rows.empty() && is_zero_vec(eq_rows.back())) eq_rows.pop_back();
    for (const auto& row : eq_rows) {
        QVec lin(row.begin(), row.begin() + n);
        assert(!is_zero_vec(lin)); // (0,...,0,c)=0 impossible for nonempty P
        h.equations.push_back(row_to_form_linear_primitive(row));
    }
    // Extreme rays of the dual cone = facets, reduced modulo the equations.
    for (const auto& r : dual.rays) {
        QVec row = to_qvec(r.v);
        // Zero out equation pivot columns.
        for (const auto& e : eq_rows) {
            std::size_t p = 0;
            while (p < e.size() && e[p].is_zero()) ++p;
            if (p >= static_cast<std::size_t>(n)) continue;
            if (row[p].is_zero()) continue;
            const Rational f = row[p] / e[p];
            for (std::size_t j = 0; j < row.size(); ++j) row[j] = row[j] - f * e[j];
        }
        QVec lin(row.begin(), row.begin() + n);
        if (is_zero_vec(lin)) continue; // the trivial "1 >= 0" ray
        h.inequalities.push_back(row_to_form_linear_primitive(row));
    }
    std::sort(h.inequalities.begin(), h.inequalities.end(), form_lex_less);
    h.inequalities.erase(std::unique(h.inequalities.begin(), h.inequalities.end()),
                         h.inequalities.end());
    return h;
}

Polyhedron assemble(int n, CanonicalGens gens) {
    Polyhedron p;
    p.ambient_dim = n;
    p.dim = dim_of_gens(gens);
    HRep h = dualize(n, gens);
    p.equations = std::move(h.equations);
    p.inequalities = std::move(h.inequalities);
    p.vertices = std::move(gens.vertices);
    p.rays = std::move(gens.rays);
    p.lineality = std::move(gens.lineality);
    assert(p.dim == n - static_cast<int>(p.equations.size()));
    return p;
}

void check_ambient_guard(int n) {
    if (n < 0) throw ParseError("negative ambient dimension");
    if (n > dim_guard()) throw DimensionGuardExceeded(n, dim_guard());
}

Polyhedron canonicalize_from_hrep_internal(int n, const std::vector<AffineForm>& forms) {
    check_ambient_guard(n);
    ZMat rows;
    rows.reserve(forms.size() + 1);
    ZVec trow(static_cast<std::size_t>(n) + 1, Int(0));
    trow[static_cast<std::size_t>(n)] = 1;
    rows.push_back(trow);
    for (const auto& f : forms) {
        if (static_cast<int>(f.linear.size()) != n)
            throw ParseError("constraint dimension mismatch");
        if (f.is_zero()) continue;
        rows.push_back(homogenize_form(f));
    }
    const DDCone cone = dd_cone(n + 1, rows);

    QMat vertices, rays, lineality;
    for (const auto& l : cone.lineality) {
        assert(l[static_cast<std::size_t>(n)] == 0);
        lineality.push_back(to_qvec(ZVec(l.begin(), l.end() - 1)));
    }
    for (const auto& r : cone.rays) {
        const Int& t = r.v[static_cast<std::size_t>(n)];
        assert(t >= 0);
        if (t == 0) {
            rays.push_back(to_qvec(ZVec(r.v.begin(), r.v.end() - 1)));
        } else {
            QVec v(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j)
                v[static_cast<std::size_t>(j)] = Rational(r.v[static_cast<std::size_t>(j)], t);
            vertices.push_back(std::move(v));
        }
    }
    if (vertices.empty()) return empty_polyhedron(n);
    return assemble(n, canonicalize_gens(std::move(vertices), std::move(rays),
                                         std::move(lineality)));
}

} // namespace

int dim_guard() { return g_dim_guard.load(); }

void set_dim_guard(int g) {
    if (g < 0) g = 0;
    if (g > kDimGuard) g = kDimGuard;
    g_dim_guard.store(g);
}

Polyhedron empty_polyhedron(int n) {
    Polyhedron p;
    p.ambient_dim = n;
    p.dim = -1;
    AffineForm never(zero_vec(n), Rational(-1));
    p.inequalities.push_back(std::move(never));
    return p;
}

bool Polyhedron::is_cone() const {
    return dim >= 0 && vertices.size() == 1 && is_zero_vec(vertices[0]);
}

bool Polyhedron::contains(const QVec& x) const {
    if (is_empty()) return false;
    for (const auto& e : equations)
        if (!e.eval(x).is_zero()) return false;
    for (const auto& f : inequalities)
        if (f.eval(x).sign() < 0) return false;
    return true;
}

bool Polyhedron::recession_contains(const QVec& dir) const {
    if (is_empty()) return false;
    for (const auto& e : equations)
        if (!dot(e.linear, dir).is_zero()) return false;
    for (const auto& f : inequalities)
        if (dot(f.linear, dir).sign() < 0) return false;
    return true;
}

bool Polyhedron::contains_poly(const Polyhedron& q) const {
    if (q.is_empty()) return true;
    if (is_empty()) return false;
    for (const auto& v : q.vertices)
        if (!contains(v)) return false;
    for (const auto& r : q.rays)
        if (!recession_contains(r)) return false;
    for (const auto& l : q.lineality)
        if (!recession_contains(l) || !recession_contains(neg(l))) return false;
    return true;
}

std::string Polyhedron::key() const {
    std::ostringstream os;
    os << ambient_dim << '|' << dim << "|E";
    for (const auto& e : equations) {
        for (const auto& c : e.linear) os << ' ' << c.str();
        os << " : " << e.constant.str() << ';';
    }
    os << "|I";
    for (const auto& f : inequalities) {
        for (const auto& c : f.linear) os << ' ' << c.str();
        os << " : " << f.constant.str() << ';';
    }
    return os.str();
}

Polyhedron canonicalize_from_hrep(int n, const std::vector<AffineForm>& forms) {
    if (forms.size() > kConstraintGuard) throw ConstraintLimitExceeded(forms.size());
    return canonicalize_from_hrep_internal(n, forms);
}

Polyhedron canonicalize_from_vrep(int n, const QMat& vertices, const QMat& rays,
                                  const QMat& lineality) {
    check_ambient_guard(n);
    if (vertices.empty()) {
        if (!rays.empty() || !lineality.empty())
            throw ParseError("vrep with rays or lineality but no vertex");
        return empty_polyhedron(n);
    }
    for (const auto& v : vertices)
        if (static_cast<int>(v.size()) != n) throw ParseError("vertex dimension mismatch");
    for (const auto& r : rays) {
        if (static_cast<int>(r.size()) != n) throw ParseError("ray dimension mismatch");
        if (is_zero_vec(r)) throw ZeroVector();
    }
    for (const auto& l : lineality) {
        if (static_cast<int>(l.size()) != n) throw ParseError("lineality dimension mismatch");
        if (is_zero_vec(l)) throw ZeroVector();
    }
    // Dualize the (possibly redundant) generators to an H-representation,
    // then run the full H-side pipeline so both representations end up
    // canonical and minimal.
    QMat prim_rays, prim_lin;
    for (const auto& r : rays) prim_rays.push_back(to_qvec(primitive(r)));
    for (const auto& l : lineality) prim_lin.push_back(to_qvec(primitive(l)));
    CanonicalGens raw;
    raw.vertices = vertices;
    raw.rays = std::move(prim_rays);
    raw.lineality = row_space_basis(std::move(prim_lin));
    HRep h = dualize(n, raw);
    std::vector<AffineForm> forms = std::move(h.inequalities);
    for (const auto& e : h.equations) {
        forms.push_back(e);
        forms.push_back(AffineForm(neg(e.linear), -e.constant));
    }
    return canonicalize_from_hrep_internal(n, forms);
}

std::vector<AffineForm> hrep_forms(const Polyhedron& p) {
    std::vector<AffineForm> forms = p.inequalities;
    for (const auto& e : p.equations) {
        forms.push_back(e);
        forms.push_back(AffineForm(neg(e.linear), -e.constant));
    }
    return forms;
}

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b) {
    assert(a.ambient_dim == b.ambient_dim);
    if (a.is_empty()) return a;
    if (b.is_empty()) return b;
    std::vector<AffineForm> forms = hrep_forms(a);
    const auto fb = hrep_forms(b);
    forms.insert(forms.end(), fb.begin(), fb.end());
    return canonicalize_from_hrep_internal(a.ambient_dim, forms);
}

Polyhedron intersect_with_hyperplane(const Polyhedron& a, const AffineForm& eq) {
    std::vector<AffineForm> forms = hrep_forms(a);
    forms.push_back(eq);
    forms.push_back(AffineForm(neg(eq.linear), -eq.constant));
    return canonicalize_from_hrep_internal(a.ambient_dim, forms);
}

Polyhedron intersect_with_halfspace(const Polyhedron& a, const AffineForm& ineq) {
    std::vector<AffineForm> forms = hrep_forms(a);
    forms.push_back(ineq);
    return canonicalize_from_hrep_internal(a.ambient_dim, forms);
}

std::vector<Polyhedron> FaceLattice::all_nonempty() const {
    std::vector<Polyhedron> out;
    for (const auto& g : groups) out.insert(out.end(), g.begin(), g.end());
    return out;
}

std::size_t FaceLattice::total_count() const {
    std::size_t c = 1;
    for (const auto& g : groups) c += g.size();
    return c;
}

namespace {

// A face of a canonical polyhedron is generated by the subset of canonical
// generators it contains (plus the shared lineality).
Polyhedron face_from_genset(const Polyhedron& p, const std::vector<bool>& in) {
    CanonicalGens g;
    const std::size_t nv = p.vertices.size();
    for (std::size_t i = 0; i < nv; ++i)
        if (in[i]) g.vertices.push_back(p.vertices[i]);
    for (std::size_t i = 0; i < p.rays.size(); ++i)
        if (in[nv + i]) g.rays.push_back(p.rays[i]);
    g.lineality = p.lineality;
    return assemble(p.ambient_dim, std::move(g));
}

} // namespace

FaceLattice face_lattice(const Polyhedron& p) {
    FaceLattice lat;
    lat.empty_face = empty_polyhedron(p.ambient_dim);
    if (p.is_empty()) return lat;

    const std::size_t nv = p.vertices.size();
    const std::size_t ng = nv + p.rays.size();
    // tight_table[i][j] = generator j lies on inequality i.
    std::vector<std::vector<bool>> tight_table(p.inequalities.size(),
                                               std::vector<bool>(ng, false));
    for (std::size_t i = 0; i < p.inequalities.size(); ++i) {
        const auto& f = p.inequalities[i];
        for (std::size_t j = 0; j < nv; ++j)
            tight_table[i][j] = f.eval(p.vertices[j]).is_zero();
        for (std::size_t j = 0; j < p.rays.size(); ++j)
            tight_table[i][nv + j] = dot(f.linear, p.rays[j]).is_zero();
    }

    std::map<std::vector<bool>, Polyhedron> faces;
    std::vector<std::vector<bool>> queue;
    const std::vector<bool> root(ng, true);
    faces.emplace(root, p);
    queue.push_back(root);
    while (!queue.empty()) {
        const std::vector<bool> cur = queue.back();
        queue.pop_back();
        for (std::size_t i = 0; i < p.inequalities.size(); ++i) {
            std::vector<bool> child(ng, false);
            bool has_vertex = false, shrunk = false;
            for (std::size_t j = 0; j < ng; ++j) {
                child[j] = cur[j] && tight_table[i][j];
                if (child[j] && j < nv) has_vertex = true;
                if (cur[j] && !child[j]) shrunk = true;
            }
            // A nonempty face always contains a canonical vertex; a genset
            // of rays alone corresponds to the empty face.
            if (!has_vertex || !shrunk) continue;
            if (faces.count(child)) continue;
            faces.emplace(child, face_from_genset(p, child));
            queue.push_back(child);
        }
    }

    lat.groups.assign(static_cast<std::size_t>(p.dim) + 1, {});
    for (auto& [mask, f] : faces) {
        const int codim = p.dim - f.dim;
        assert(codim >= 0 && codim <= p.dim);
        lat.groups[static_cast<std::size_t>(codim)].push_back(std::move(f));
    }
    for (auto& g : lat.groups)
        std::sort(g.begin(), g.end(),
                  [](const Polyhedron& a, const Polyhedron& b) { return a.key() < b.key(); });
    return lat;
}

QVec relative_interior_point(const Polyhedron& p) {
    if (p.is_empty()) throw EmptyPolyhedron();
    QVec s = zero_vec(p.ambient_dim);
    for (const auto& v : p.vertices) s = add(s, v);
    s = scale(s, Rational(Int(1), Int(p.vertices.size())));
    for (const auto& r : p.rays) s = add(s, r);
    return s;
}

bool is_face_of(const Polyhedron& face, const Polyhedron& of) {
    if (face.is_empty()) return true;
    if (of.is_empty()) return false;
    if (!of.contains_poly(face)) return false;
    // Collect the inequalities of `of` tight on all of `face`, and compare
    // the face they carve out with `face` itself.
    const std::size_t nv = of.vertices.size();
    const std::size_t ng = nv + of.rays.size();
    std::vector<bool> mask(ng, true);
    for (const auto& f : of.inequalities) {
        bool tight = true;
        for (const auto& v : face.vertices)
            if (!f.eval(v).is_zero()) { tight = false; break; }
        if (tight)
            for (const auto& r : face.rays)
                if (!dot(f.linear, r).is_zero()) { tight = false; break; }
        if (tight)
            for (const auto& l : face.lineality)
                if (!dot(f.linear, l).is_zero()) { tight = false; break; }
        if (!tight) continue;
        for (std::size_t j = 0; j < nv; ++j)
            if (mask[j] && !f.eval(of.vertices[j]).is_zero()) mask[j] = false;
        for (std::size_t j = 0; j < of.rays.size(); ++j)
            if (mask[nv + j] && !dot(f.linear, of.rays[j]).is_zero()) mask[nv + j] = false;
    }
    bool has_vertex = false;
    for (std::size_t j = 0; j < nv; ++j) has_vertex = has_vertex || mask[j];
    if (!has_vertex) return false;
    return face_from_genset(of, mask) == face;
}

QMat linear_span_rows(const Polyhedron& p) {
    QMat rows;
    if (p.is_empty()) return rows;
    for (std::size_t i = 1; i < p.vertices.size(); ++i)
        rows.push_back(sub(p.vertices[i], p.vertices[0]));
    for (const auto& r : p.rays) rows.push_back(r);
    for (const auto& l : p.lineality) rows.push_back(l);
    return row_space_basis(std::move(rows));
}

ZMat span_lattice(const Polyhedron& p) {
    return lattice_basis(linear_span_rows(p), p.ambient_dim);
}

ZVec lattice_normal_vector(const Polyhedron& sigma, const Polyhedron& tau) {
    if (sigma.is_empty() || tau.is_empty()) throw NotACodimOneFace("empty input");
    if (tau.dim != sigma.dim - 1) throw NotACodimOneFace();
    if (!is_face_of(tau, sigma)) throw NotACodimOneFace();

    const int n = sigma.ambient_dim;
    const ZMat lat_sigma = span_lattice(sigma);
    const ZMat lat_tau = span_lattice(tau);
    const int k = static_cast<int>(lat_sigma.size());
    assert(static_cast<int>(lat_tau.size()) == k - 1);

    // Coordinates of the tau-lattice in the sigma-lattice basis.
    QMat sigma_t(static_cast<std::size_t>(n), QVec(static_cast<std::size_t>(k)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j)
            sigma_t[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                Rational(lat_sigma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    ZMat coords;
    for (const auto& b : lat_tau) {
        const auto c = solve(sigma_t, to_qvec(b));
        assert(c.has_value());
        ZVec ci(static_cast<std::size_t>(k));
        for (int j = 0; j < k; ++j) {
            assert((*c)[static_cast<std::size_t>(j)].is_integer());
            ci[static_cast<std::size_t>(j)] = (*c)[static_cast<std::size_t>(j)].num();
        }
        coords.push_back(std::move(ci));
    }

    const ZVec u_coord = complete_to_unimodular(coords, k);
    ZVec u(static_cast<std::size_t>(n), Int(0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j)
            u[static_cast<std::size_t>(j)] +=
                u_coord[static_cast<std::size_t>(i)] * lat_sigma[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];

    // Orient u into sigma: the inequalities of sigma tight on tau must be
    // nonnegative along u (they vanish on lin(tau), so this is well defined).
    int side = 0;
    const QVec uq = to_qvec(u);
    for (const auto& f : sigma.inequalities) {
        bool tight = true;
        for (const auto& v : tau.vertices)
            if (!f.eval(v).is_zero()) { tight = false; break; }
        if (tight)
            for (const auto& r : tau.rays)
                if (!dot(f.linear, r).is_zero()) { tight = false; break; }
        if (tight)
            for (const auto& l : tau.lineality)
                if (!dot(f.linear, l).is_zero()) { tight = false; break; }
        if (!tight) continue;
        const int s = dot(f.linear, uq).sign();
        if (s != 0) {
            assert(side == 0 || side == s);
            side = s;
        }
    }
    assert(side != 0); // u generates lin(sigma)/lin(tau), some tight facet sees it
    if (side < 0)
        for (auto& x : u) x = -x;
    return reduce_mod_lattice(std::move(u), lat_tau);
}

namespace {

// gcd over Q: the subgroup of (Q,+) generated by rationals is cyclic.
Rational rational_gcd(const std::vector<Rational>& gens) {
    Int l = 1;
    for (const auto& g : gens)
        if (!g.is_zero()) l = lcm(l, g.den());
    Int g = 0;
    for (const auto& x : gens)
        if (!x.is_zero()) g = gcd(g, Int(x.num() * (l / x.den())));
    if (g == 0) return Rational(0);
    return Rational(g, l);
}

bool in_group(const Rational& c, const Rational& generator) {
    if (generator.is_zero()) return c.is_zero();
    return (c / generator).is_integer();
}

} // namespace

ZGammaReport is_zgamma(const Polyhedron& p, const std::vector<Rational>& gamma_generators) {
    ZGammaReport rep;
    if (p.is_empty()) return rep;
    const Rational g = rational_gcd(gamma_generators);
    for (const auto& e : p.equations) {
        if (!in_group(e.constant, g)) {
            rep.ok = false;
            rep.witness_form = e;
            rep.witness_facet = p;
            return rep;
        }
    }
    for (const auto& f : p.inequalities) {
        if (!in_group(f.constant, g)) {
            rep.ok = false;
            rep.witness_form = f;
            rep.witness_facet = intersect_with_hyperplane(p, f);
            return rep;
        }
    }
    return rep;
}

namespace {

// True iff the form takes a strictly negative value somewhere on p.
bool takes_negative_value(const Polyhedron& p, const AffineForm& f) {
    for (const auto& v : p.vertices)
        if (f.eval(v).sign() < 0) return true;
    for (const auto& r : p.rays)
        if (dot(f.linear, r).sign() < 0) return true;
    for (const auto& l : p.lineality)
        if (!dot(f.linear, l).is_zero()) return true;
    return false;
}

} // namespace

bool union_contains(const Polyhedron& p, const std::vector<Polyhedron>& cover) {
    if (p.is_empty()) return true;
    struct Rec {
        const std::vector<Polyhedron>& cover;
        bool run(const Polyhedron& piece, std::size_t i) {
            if (piece.is_empty()) return true;
            if (i == cover.size()) return false;
            const Polyhedron meet = intersect(piece, cover[i]);
            if (meet.dim < piece.dim) return run(piece, i + 1);
            if (meet == piece) return true;
            // Split off the parts of `piece` strictly outside cover[i]. Each
            // closed remainder piece∩{f<=0} is the closure of a strictly
            // violated region, so it must be covered by the remaining sets;
            // forms never violated contribute nothing.
            for (const auto& f : hrep_forms(cover[i])) {
                if (!takes_negative_value(piece, f)) continue;
                const AffineForm flipped(neg(f.linear), -f.constant);
                Polyhedron outside = intersect_with_halfspace(piece, flipped);
                assert(outside.dim == piece.dim);
                if (!run(outside, i + 1)) return false;
            }
            return true;
        }
    } rec{cover};
    return rec.run(p, 0);
}

Polyhedron tangent_cone(const Polyhedron& p, const QVec& at) {
    assert(p.contains(at));
    if (p.is_cone() && is_zero_vec(at)) return p; // a cone is its own tangent cone at the apex
    QMat rays;
    for (const auto& v : p.vertices) {
        const QVec d = sub(v, at);
        if (is_zero_vec(d)) continue;
        rays.push_back(d);
    }
    for (const auto& r : p.rays) rays.push_back(r);
    QMat vert{zero_vec(p.ambient_dim)};
    return canonicalize_from_vrep(p.ambient_dim, vert, rays, p.lineality);
}

} // namespace tropkit
