#include <doctest.h>

#include <algorithm>
#include <functional>
#include <set>

#include "support/gen.hpp"
#include "tropkit/errors.hpp"
#include "tropkit/polyhedron.hpp"

using namespace tropkit;
using tropgen::SplitMix64;

namespace {

QVec qv(std::initializer_list<long> xs) { return tropgen::qvec(xs); }

AffineForm form(std::initializer_list<long> lin, long c) {
    return AffineForm(qv(lin), Rational(c));
}

Polyhedron unit_square() {
    return canonicalize_from_hrep(2, {form({1, 0}, 0), form({-1, 0}, 1),
                                      form({0, 1}, 0), form({0, -1}, 1)});
}

// Independent face enumeration: every face is P cut by a subset of its
// canonical inequalities turned into equations.
std::set<std::string> brute_force_faces(const Polyhedron& p) {
    std::set<std::string> keys;
    const std::size_t m = p.inequalities.size();
    REQUIRE(m <= 16);
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
        Polyhedron f = p;
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (std::size_t(1) << i))
                f = intersect_with_hyperplane(f, p.inequalities[i]);
        if (!f.is_empty()) keys.insert(f.key());
    }
    return keys;
}

std::set<std::string> lattice_face_keys(const Polyhedron& p) {
    std::set<std::string> keys;
    for (const auto& f : face_lattice(p).all_nonempty()) keys.insert(f.key());
    return keys;
}

} // namespace

TEST_CASE("unit square canonicalization") {
    const Polyhedron p = unit_square();
    CHECK(p.dim == 2);
    REQUIRE(p.vertices.size() == 4);
    CHECK(p.vertices[0] == qv({0, 0}));
    CHECK(p.vertices[1] == qv({0, 1}));
    CHECK(p.vertices[2] == qv({1, 0}));
    CHECK(p.vertices[3] == qv({1, 1}));
    CHECK(p.rays.empty());
    CHECK(p.lineality.empty());
    CHECK(p.equations.empty());
    CHECK(p.inequalities.size() == 4);
}

TEST_CASE("single point from vrep") {
    const Polyhedron p = canonicalize_from_vrep(2, {qv({3, 5})}, {}, {});
    CHECK(p.dim == 0);
    CHECK(p.vertices.size() == 1);
    CHECK(p.inequalities.empty());
    REQUIRE(p.equations.size() == 2);
    // x = 3 and y = 5 in canonical order.
    CHECK(p.equations[0].linear == qv({1, 0}));
    CHECK(p.equations[0].constant == Rational(-3));
    CHECK(p.equations[1].linear == qv({0, 1}));
    CHECK(p.equations[1].constant == Rational(-5));
}

TEST_CASE("half-line x >= 0") {
    const Polyhedron p = canonicalize_from_hrep(1, {form({1}, 0)});
    CHECK(p.dim == 1);
    REQUIRE(p.vertices.size() == 1);
    CHECK(p.vertices[0] == qv({0}));
    REQUIRE(p.rays.size() == 1);
    CHECK(p.rays[0] == qv({1}));
    CHECK(p.inequalities.size() == 1);
    CHECK(p.equations.empty());
}

TEST_CASE("empty polyhedron") {
    const Polyhedron p = canonicalize_from_hrep(1, {form({1}, 0), form({-1}, -1)});
    CHECK(p.is_empty());
    CHECK(p.dim == -1);
    CHECK(p.vertices.empty());
    CHECK_FALSE(p.contains(qv({0})));
    CHECK_THROWS_AS(relative_interior_point(p), EmptyPolyhedron);
}

TEST_CASE("whole space") {
    const Polyhedron p = canonicalize_from_hrep(2, {});
    CHECK(p.dim == 2);
    CHECK(p.vertices.size() == 1);
    CHECK(p.vertices[0] == qv({0, 0}));
    CHECK(p.lineality.size() == 2);
    CHECK(p.inequalities.empty());
}

TEST_CASE("dimension guard") {
    CHECK_THROWS_AS(canonicalize_from_hrep(13, {}), DimensionGuardExceeded);
    set_dim_guard(3);
    CHECK_THROWS_AS(canonicalize_from_hrep(4, {}), DimensionGuardExceeded);
    set_dim_guard(kDimGuard);
    CHECK_NOTHROW(canonicalize_from_hrep(4, {}));
}

TEST_CASE("redundant constraints are eliminated") {
    const Polyhedron p = canonicalize_from_hrep(
        2, {form({1, 0}, 0), form({0, 1}, 0), form({1, 1}, 5), form({1, 0}, 3)});
    CHECK(p.inequalities.size() == 2);
    CHECK(p.dim == 2);
}

TEST_CASE("hrep/vrep round-trip on random polyhedra") {
    SplitMix64 rng(2024);
    int nonempty = 0;
    for (int it = 0; it < 1000 && nonempty < 200; ++it) {
        const int n = 1 + static_cast<int>(rng.below(6));
        const int m = 1 + static_cast<int>(rng.below(7));
        std::vector<AffineForm> forms;
        for (int i = 0; i < m; ++i) {
            QVec lin = tropgen::random_small_vec(rng, n, 3);
            forms.emplace_back(std::move(lin), Rational(rng.range(-4, 4)));
        }
        const Polyhedron p = canonicalize_from_hrep(n, forms);
        if (p.is_empty()) continue;
        ++nonempty;
        const Polyhedron q = canonicalize_from_vrep(n, p.vertices, p.rays, p.lineality);
        CHECK(q == p);
        CHECK(q.dim == p.dim);
        // Canonicalization is idempotent on the H-side as well.
        const Polyhedron r = canonicalize_from_hrep(n, hrep_forms(p));
        CHECK(r == p);
    }
    CHECK(nonempty >= 200);
}

TEST_CASE("face lattice of the unit square") {
    const auto lat = face_lattice(unit_square());
    REQUIRE(lat.groups.size() == 3);
    CHECK(lat.groups[0].size() == 1);
    CHECK(lat.groups[1].size() == 4);
    CHECK(lat.groups[2].size() == 4);
    CHECK(lat.total_count() == 10);
    CHECK(lat.empty_face.is_empty());
}

TEST_CASE("face lattice of the half-line") {
    const Polyhedron p = canonicalize_from_hrep(1, {form({1}, 0)});
    const auto lat = face_lattice(p);
    REQUIRE(lat.groups.size() == 2);
    CHECK(lat.groups[0].size() == 1);
    CHECK(lat.groups[1].size() == 1);
    CHECK(lat.groups[1][0].dim == 0);
}

TEST_CASE("face lattice of a cone matches brute force") {
    const Polyhedron cone =
        canonicalize_from_vrep(2, {qv({0, 0})}, {qv({1, 0}), qv({1, 1})}, {});
    CHECK(lattice_face_keys(cone) == brute_force_faces(cone));
    const auto lat = face_lattice(cone);
    REQUIRE(lat.groups.size() == 3);
    CHECK(lat.groups[0].size() == 1); // the cone
    CHECK(lat.groups[1].size() == 2); // two extreme rays
    CHECK(lat.groups[2].size() == 1); // the apex
}

TEST_CASE("face lattice matches brute force on random polyhedra") {
    SplitMix64 rng(99);
    int checked = 0;
    for (int it = 0; it < 40 && checked < 12; ++it) {
        const int n = 2 + static_cast<int>(rng.below(2));
        std::vector<AffineForm> forms;
        const int m = 3 + static_cast<int>(rng.below(3));
        for (int i = 0; i < m; ++i)
            forms.emplace_back(tropgen::random_small_vec(rng, n, 2), Rational(rng.range(0, 3)));
        const Polyhedron p = canonicalize_from_hrep(n, forms);
        if (p.is_empty() || p.inequalities.size() > 8) continue;
        ++checked;
        CHECK(lattice_face_keys(p) == brute_force_faces(p));
    }
    CHECK(checked >= 6);
}

TEST_CASE("simplex face counts are binomial") {
    // Simplex in dimension d: x_i >= 0, sum x_i <= 1.
    for (int d = 1; d <= 4; ++d) {
        std::vector<AffineForm> forms;
        for (int i = 0; i < d; ++i) {
            QVec e = zero_vec(d);
            e[static_cast<std::size_t>(i)] = Rational(1);
            forms.emplace_back(std::move(e), Rational(0));
        }
        QVec ones(static_cast<std::size_t>(d), Rational(-1));
        forms.emplace_back(std::move(ones), Rational(1));
        const auto lat = face_lattice(canonicalize_from_hrep(d, forms));
        // Faces of dimension k: C(d+1, k+1).
        REQUIRE(static_cast<int>(lat.groups.size()) == d + 1);
        for (int codim = 0; codim <= d; ++codim) {
            const int k = d - codim;
            long expected = 1;
            for (int i = 0; i < k + 1; ++i) expected = expected * (d + 1 - i) / (i + 1);
            CHECK(static_cast<long>(lat.groups[static_cast<std::size_t>(codim)].size()) ==
                  expected);
        }
    }
}

TEST_CASE("redundant generators are eliminated by canonicalization") {
    // A convex combination of vertices and a positive combination of rays
    // must not survive as generators.
    // (2,0) and (1,0) are absorbed by the ray (1,0); (2,1) = (1,1) + (1,0).
    const QMat verts{qv({0, 0}), qv({2, 0}), qv({1, 0})};
    const QMat rays{qv({1, 1}), qv({1, 0}), qv({2, 1})};
    const Polyhedron p = canonicalize_from_vrep(2, verts, rays, {});
    CHECK(p.vertices.size() == 1);
    CHECK(p.vertices[0] == qv({0, 0}));
    CHECK(p.rays.size() == 2);
    const QMat qverts{qv({0, 0})};
    const QMat qrays{qv({1, 0}), qv({-1, 0})};
    const QMat qlin{qv({1, 0})};
    const Polyhedron q = canonicalize_from_vrep(2, qverts, qrays, qlin);
    // Rays inside the lineality space disappear.
    CHECK(q.rays.empty());
    CHECK(q.lineality.size() == 1);
    CHECK(q.dim == 1);
}

TEST_CASE("euler characteristic of bounded face lattices is 1") {
    // For a nonempty polytope, the alternating sum of face counts (excluding
    // the empty face) is 1 - an independent sanity invariant of the lattice.
    SplitMix64 rng(8642);
    int checked = 0;
    for (int attempt = 0; attempt < 40 && checked < 10; ++attempt) {
        const int n = 2 + static_cast<int>(rng.below(3));
        std::vector<AffineForm> forms;
        const int m = 2 + static_cast<int>(rng.below(4));
        for (int i = 0; i < m; ++i)
            forms.emplace_back(tropgen::random_small_vec(rng, n, 2), Rational(rng.range(0, 3)));
        for (int j = 0; j < n; ++j) {
            QVec e = zero_vec(n);
            e[static_cast<std::size_t>(j)] = Rational(1);
            forms.emplace_back(e, Rational(3));
            forms.emplace_back(neg(e), Rational(3));
        }
        const Polyhedron p = canonicalize_from_hrep(n, forms);
        if (p.is_empty()) continue;
        ++checked;
        long chi = 0;
        for (const auto& f : face_lattice(p).all_nonempty()) chi += f.dim % 2 == 0 ? 1 : -1;
        CHECK(chi == 1);
        // Dimension bookkeeping: codim of the affine hull matches.
        CHECK(p.dim == p.ambient_dim - static_cast<int>(p.equations.size()));
    }
    CHECK(checked >= 10);
}

TEST_CASE("vertices match brute-force basic solutions on bounded polytopes") {
    // Independent vertex oracle: every vertex of a polytope is the unique
    // solution of n tight constraints; enumerate all n-subsets, solve, and
    // keep the feasible solutions.
    SplitMix64 rng(321);
    int checked = 0;
    for (int attempt = 0; attempt < 60 && checked < 25; ++attempt) {
        const int n = 2 + static_cast<int>(rng.below(3));
        std::vector<AffineForm> forms;
        const int m = 2 + static_cast<int>(rng.below(5));
        for (int i = 0; i < m; ++i)
            forms.emplace_back(tropgen::random_small_vec(rng, n, 2), Rational(rng.range(-2, 3)));
        // A box keeps everything bounded.
        for (int j = 0; j < n; ++j) {
            QVec e = zero_vec(n);
            e[static_cast<std::size_t>(j)] = Rational(1);
            forms.emplace_back(e, Rational(4));
            forms.emplace_back(neg(e), Rational(4));
        }
        const Polyhedron p = canonicalize_from_hrep(n, forms);
        if (p.is_empty()) continue;
        REQUIRE(p.bounded());
        ++checked;
        std::set<std::string> brute;
        const std::size_t total = forms.size();
        std::vector<std::size_t> pick(static_cast<std::size_t>(n));
        std::function<void(std::size_t, int)> rec = [&](std::size_t from, int need) {
            if (need == 0) {
                QMat a;
                QVec b;
                for (int i = 0; i < n; ++i) {
                    a.push_back(forms[pick[static_cast<std::size_t>(i)]].linear);
                    b.push_back(-forms[pick[static_cast<std::size_t>(i)]].constant);
                }
                if (rank(a) != n) return;
                const auto x = solve(a, b);
                if (!x || !p.contains(*x)) return;
                std::string key;
                for (const auto& c : *x) key += c.str() + ",";
                brute.insert(key);
                return;
            }
            for (std::size_t i = from; i + static_cast<std::size_t>(need) <= total; ++i) {
                pick[static_cast<std::size_t>(n - need)] = i;
                rec(i + 1, need - 1);
            }
        };
        rec(0, n);
        std::set<std::string> canonical;
        for (const auto& v : p.vertices) {
            std::string key;
            for (const auto& c : v) key += c.str() + ",";
            canonical.insert(key);
        }
        CHECK(canonical == brute);
    }
    CHECK(checked >= 25);
}

TEST_CASE("faces of faces are faces: the lattice is transitively closed") {
    SplitMix64 rng(642);
    int checked = 0;
    for (int attempt = 0; attempt < 30 && checked < 6; ++attempt) {
        const int n = 2 + static_cast<int>(rng.below(2));
        std::vector<AffineForm> forms;
        const int m = 3 + static_cast<int>(rng.below(3));
        for (int i = 0; i < m; ++i)
            forms.emplace_back(tropgen::random_small_vec(rng, n, 2), Rational(rng.range(0, 3)));
        const Polyhedron p = canonicalize_from_hrep(n, forms);
        if (p.is_empty() || p.dim < 1) continue;
        ++checked;
        const auto keys = lattice_face_keys(p);
        for (const auto& f : face_lattice(p).all_nonempty())
            for (const auto& ff : face_lattice(f).all_nonempty()) {
                CHECK(keys.count(ff.key()) == 1);
                CHECK(is_face_of(ff, p));
            }
    }
    CHECK(checked >= 5);
}

TEST_CASE("is_zgamma with several generators uses the generated subgroup") {
    // <1/2, 1/3> = <1/6>.
    const std::vector<Rational> gens = {Rational::parse("1/2"), Rational::parse("1/3")};
    const Polyhedron p = canonicalize_from_hrep(1, {AffineForm(qv({6}), Rational(-1))});
    CHECK(is_zgamma(p, gens).ok); // x >= 1/6
    const Polyhedron q = canonicalize_from_hrep(1, {AffineForm(qv({12}), Rational(-1))});
    CHECK_FALSE(is_zgamma(q, gens).ok); // x >= 1/12
}

TEST_CASE("relative interior point") {
    CHECK(relative_interior_point(unit_square()) ==
          QVec{Rational::parse("1/2"), Rational::parse("1/2")});
    CHECK(relative_interior_point(canonicalize_from_vrep(2, {qv({3, 5})}, {}, {})) ==
          qv({3, 5}));
    CHECK(relative_interior_point(canonicalize_from_hrep(1, {form({1}, 0)})) == qv({1}));
}

TEST_CASE("relative interior point satisfies all facets strictly") {
    SplitMix64 rng(5);
    for (int it = 0; it < 60; ++it) {
        const int n = 1 + static_cast<int>(rng.below(4));
        std::vector<AffineForm> forms;
        const int m = 1 + static_cast<int>(rng.below(6));
        for (int i = 0; i < m; ++i)
            forms.emplace_back(tropgen::random_small_vec(rng, n, 3), Rational(rng.range(-3, 3)));
        const Polyhedron p = canonicalize_from_hrep(n, forms);
        if (p.is_empty()) continue;
        const QVec x = relative_interior_point(p);
        for (const auto& e : p.equations) CHECK(e.eval(x).is_zero());
        for (const auto& f : p.inequalities) CHECK(f.eval(x).sign() > 0);
    }
}

TEST_CASE("lattice normal vector examples") {
    const Polyhedron origin = canonicalize_from_vrep(2, {qv({0, 0})}, {}, {});
    const Polyhedron ray11 = canonicalize_from_vrep(2, {qv({0, 0})}, {qv({1, 1})}, {});
    CHECK(lattice_normal_vector(ray11, origin) == ZVec{Int(1), Int(1)});

    const Polyhedron ray24 = canonicalize_from_vrep(2, {qv({0, 0})}, {qv({2, 4})}, {});
    CHECK(lattice_normal_vector(ray24, origin) == ZVec{Int(1), Int(2)});

    const Polyhedron quadrant =
        canonicalize_from_vrep(2, {qv({0, 0})}, {qv({1, 0}), qv({0, 1})}, {});
    const Polyhedron xray = canonicalize_from_vrep(2, {qv({0, 0})}, {qv({1, 0})}, {});
    const ZVec u = lattice_normal_vector(quadrant, xray);
    // Must be == (0,1) modulo lin(tau) = x-axis, pointing upward.
    CHECK(u[1] == 1);
}

TEST_CASE("lattice normal vector error cases") {
    const Polyhedron origin = canonicalize_from_vrep(2, {qv({0, 0})}, {}, {});
    const Polyhedron quadrant =
        canonicalize_from_vrep(2, {qv({0, 0})}, {qv({1, 0}), qv({0, 1})}, {});
    CHECK_THROWS_AS(lattice_normal_vector(quadrant, origin), NotACodimOneFace);
    const Polyhedron far_pt = canonicalize_from_vrep(2, {qv({5, 5})}, {}, {});
    const Polyhedron xray = canonicalize_from_vrep(2, {qv({0, 0})}, {qv({1, 0})}, {});
    CHECK_THROWS_AS(lattice_normal_vector(xray, far_pt), NotACodimOneFace);
}

TEST_CASE("normal vector representative perturbation stays in the coset") {
    SplitMix64 rng(31);
    const Polyhedron cone = canonicalize_from_vrep(
        3, {qv({0, 0, 0})}, {qv({1, 0, 0}), qv({1, 2, 0}), qv({0, 0, 1})}, {});
    const auto lat = face_lattice(cone);
    for (const auto& tau : lat.groups[1]) {
        const ZVec u = lattice_normal_vector(cone, tau);
        const ZMat lat_tau = span_lattice(tau);
        // u + any lattice vector of lin(tau) reduces back to u.
        ZVec v = u;
        for (const auto& b : lat_tau) {
            const Int k(static_cast<long>(rng.range(-3, 3)));
            for (std::size_t j = 0; j < v.size(); ++j) v[j] += k * b[j];
        }
        CHECK(reduce_mod_lattice(v, lat_tau) == u);
    }
}

TEST_CASE("is_zgamma") {
    const std::vector<Rational> z = {Rational(1)};
    const std::vector<Rational> half = {Rational::parse("1/2")};
    CHECK(is_zgamma(unit_square(), z).ok);

    const Polyhedron p = canonicalize_from_hrep(1, {form({2}, -1)}); // x >= 1/2
    const auto rep = is_zgamma(p, z);
    CHECK_FALSE(rep.ok);
    CHECK(rep.witness_facet.dim == 0);
    CHECK(rep.witness_facet.vertices[0] == QVec{Rational::parse("1/2")});
    CHECK(is_zgamma(p, half).ok);

    // Empty generator list: only integral linear subspaces through 0 qualify.
    const Polyhedron through0 = canonicalize_from_hrep(2, {form({1, 1}, 0)});
    CHECK(is_zgamma(through0, {}).ok);
    CHECK_FALSE(is_zgamma(unit_square(), {}).ok);
}

TEST_CASE("union containment") {
    const Polyhedron sq = unit_square();
    const Polyhedron left = intersect_with_halfspace(sq, form({-2, 0}, 1));  // x <= 1/2
    const Polyhedron right = intersect_with_halfspace(sq, form({2, 0}, -1)); // x >= 1/2
    CHECK(union_contains(sq, {left, right}));
    CHECK_FALSE(union_contains(sq, {left}));
    CHECK(union_contains(left, {sq}));
}

TEST_CASE("tangent cone") {
    const Polyhedron sq = unit_square();
    const Polyhedron at_corner = tangent_cone(sq, qv({0, 0}));
    CHECK(at_corner.is_cone());
    CHECK(at_corner.dim == 2);
    CHECK(at_corner.rays.size() == 2);
    const Polyhedron inside = tangent_cone(sq, QVec{Rational::parse("1/2"), Rational::parse("1/2")});
    CHECK(inside.dim == 2);
    CHECK(inside.lineality.size() == 2);
}

TEST_CASE("is_face_of") {
    const Polyhedron sq = unit_square();
    const auto lat = face_lattice(sq);
    for (const auto& g : lat.groups)
        for (const auto& f : g) CHECK(is_face_of(f, sq));
    // A segment through the interior is not a face.
    const Polyhedron slice = intersect_with_hyperplane(sq, form({2, 0}, -1));
    CHECK_FALSE(is_face_of(slice, sq));
}
