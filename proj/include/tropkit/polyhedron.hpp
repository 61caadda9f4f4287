#pragma once

#include <string>
#include <vector>

#include "tropkit/lattice.hpp"
#include "tropkit/linalg.hpp"

namespace tropkit {

// Hard guards for the exact double-description conversion.
inline constexpr int kDimGuard = 12;
inline constexpr std::size_t kConstraintGuard = 64;

// Runtime dimension guard; may be lowered (never raised) via TROPKIT_MAX_DIM.
int dim_guard();
void set_dim_guard(int g);

// f(x) = linear . x + constant, interpreted as f(x) >= 0 when used as a
// constraint and f(x) = 0 when used as an equation.
struct AffineForm {
    QVec linear;
    Rational constant;

    AffineForm() = default;
    AffineForm(QVec lin, Rational c) : linear(std::move(lin)), constant(std::move(c)) {}

    Rational eval(const QVec& x) const { return dot(linear, x) + constant; }
    int ambient_dim() const { return static_cast<int>(linear.size()); }
    bool is_zero() const { return is_zero_vec(linear) && constant.is_zero(); }

    friend bool operator==(const AffineForm& a, const AffineForm& b) {
        return a.linear == b.linear && a.constant == b.constant;
    }
};

// A rational polyhedron with synchronized canonical H- and V-representations.
//
//   P = { x : e(x) = 0 for e in equations, f(x) >= 0 for f in inequalities }
//     = conv(vertices) + cone(rays) + span(lineality)
//
// Canonical form: equations are the RREF of the affine hull with primitive
// integer linear parts; inequalities are the facets, reduced modulo the
// equations, with primitive integer linear parts, sorted; rays and lineality
// are primitive integer vectors, vertices and rays reduced modulo the
// lineality pivots, everything sorted lexicographically. The empty
// polyhedron has dim -1 and the single inequality -1 >= 0.
class Polyhedron {
public:
    int ambient_dim = 0;
    std::vector<AffineForm> equations;
    std::vector<AffineForm> inequalities;
    QMat vertices;
    QMat rays;
    QMat lineality;
    int dim = -1;

    bool is_empty() const { return dim < 0; }
    bool is_cone() const; // single vertex at the origin
    bool contains(const QVec& x) const;
    bool recession_contains(const QVec& dir) const;
    bool contains_poly(const Polyhedron& q) const;
    bool bounded() const { return rays.empty() && lineality.empty(); }

    // Canonical serialization; equal polyhedra have equal keys.
    std::string key() const;

    friend bool operator==(const Polyhedron& a, const Polyhedron& b) {
        return a.key() == b.key();
    }
    friend bool operator!=(const Polyhedron& a, const Polyhedron& b) { return !(a == b); }
};

Polyhedron empty_polyhedron(int n);

// Double-description canonicalization from a one-sided description.
Polyhedron canonicalize_from_hrep(int n, const std::vector<AffineForm>& forms);
Polyhedron canonicalize_from_vrep(int n, const QMat& vertices, const QMat& rays,
                                  const QMat& lineality);

// All inequalities describing P (equations expanded to two inequalities).
std::vector<AffineForm> hrep_forms(const Polyhedron& p);

Polyhedron intersect(const Polyhedron& a, const Polyhedron& b);
Polyhedron intersect_with_hyperplane(const Polyhedron& a, const AffineForm& eq);
Polyhedron intersect_with_halfspace(const Polyhedron& a, const AffineForm& ineq);

struct FaceLattice {
    // groups[c] = faces of codimension c within P; the empty face is stored
    // separately (it has no well-defined codimension).
    std::vector<std::vector<Polyhedron>> groups;
    Polyhedron empty_face;

    std::vector<Polyhedron> all_nonempty() const;
    std::size_t total_count() const; // including the empty face
};

FaceLattice face_lattice(const Polyhedron& p);

// Deterministic point in the relative interior: the vertex barycenter plus
// the sum of the canonical rays. Throws EmptyPolyhedron.
QVec relative_interior_point(const Polyhedron& p);

// True iff `face` is a face of `of` (empty face and `of` itself included).
bool is_face_of(const Polyhedron& face, const Polyhedron& of);

// Basis rows of the linear span lin(P) = span{v - v0, rays, lineality}.
QMat linear_span_rows(const Polyhedron& p);

// HNF basis of lin(P) ∩ Z^n.
ZMat span_lattice(const Polyhedron& p);

// Canonical primitive lattice normal vector of sigma relative to its
// codimension-one face tau: an integer vector in lin(sigma) generating
// lin(sigma)∩Z^n modulo lin(tau)∩Z^n, pointing from tau into sigma,
// Hermite-reduced modulo lin(tau)∩Z^n. Throws NotACodimOneFace.
ZVec lattice_normal_vector(const Polyhedron& sigma, const Polyhedron& tau);

struct ZGammaReport {
    bool ok = true;
    AffineForm witness_form;  // set when !ok
    Polyhedron witness_facet; // the face where the offending form is tight
};

// Decides whether every canonical supporting form of P (primitive integer
// linear part) has its constant in the subgroup of Q generated by
// gamma_generators.
ZGammaReport is_zgamma(const Polyhedron& p, const std::vector<Rational>& gamma_generators);

// True iff p is contained in the union of the given polyhedra.
bool union_contains(const Polyhedron& p, const std::vector<Polyhedron>& cover);

// Tangent cone of p at a point of p, translated to the origin.
Polyhedron tangent_cone(const Polyhedron& p, const QVec& at);

} // namespace tropkit
