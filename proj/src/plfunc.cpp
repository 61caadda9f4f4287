#include "tropkit/plfunc.hpp"

#include <algorithm>
#include <cassert>

#include "tropkit/errors.hpp"

namespace tropkit {

namespace {

QMat zero_matrix(int n) { return QMat(static_cast<std::size_t>(n), zero_vec(n)); }

const QMat& hessian_or_zero(const QuadraticForm& f, QMat& scratch, int n) {
    if (!f.hessian.empty()) return f.hessian;
    scratch = zero_matrix(n);
    return scratch;
}

} // namespace

bool QuadraticForm::is_affine() const {
    for (const auto& row : hessian)
        for (const auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

Rational QuadraticForm::eval(const QVec& x) const {
    Rational v = dot(linear, x) + constant;
    if (!hessian.empty()) {
        Rational q;
        for (std::size_t i = 0; i < x.size(); ++i)
            q += x[i] * dot(hessian[i], x);
        v += q / Rational(2);
    }
    return v;
}

QVec QuadraticForm::gradient(const QVec& x) const {
    QVec g = linear;
    if (!hessian.empty())
        for (std::size_t i = 0; i < x.size(); ++i) g[i] = g[i] + dot(hessian[i], x);
    return g;
}

QVec QuadraticForm::hessian_times(const QVec& v) const {
    if (hessian.empty()) return zero_vec(static_cast<int>(linear.size()));
    QVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = dot(hessian[i], v);
    return out;
}

QuadraticForm QuadraticForm::operator-(const QuadraticForm& o) const {
    const int n = static_cast<int>(linear.size());
    QuadraticForm r({}, sub(linear, o.linear), constant - o.constant);
    if (!hessian.empty() || !o.hessian.empty()) {
        QMat sa, sb;
        const QMat& a = hessian_or_zero(*this, sa, n);
        const QMat& b = hessian_or_zero(o, sb, n);
        r.hessian = a;
        for (std::size_t i = 0; i < r.hessian.size(); ++i)
            r.hessian[i] = sub(r.hessian[i], b[i]);
    }
    return r;
}

QuadraticForm QuadraticForm::operator+(const QuadraticForm& o) const {
    const int n = static_cast<int>(linear.size());
    QuadraticForm r({}, add(linear, o.linear), constant + o.constant);
    if (!hessian.empty() || !o.hessian.empty()) {
        QMat sa, sb;
        const QMat& a = hessian_or_zero(*this, sa, n);
        const QMat& b = hessian_or_zero(o, sb, n);
        r.hessian = a;
        for (std::size_t i = 0; i < r.hessian.size(); ++i)
            r.hessian[i] = add(r.hessian[i], b[i]);
    }
    return r;
}

bool operator==(const QuadraticForm& a, const QuadraticForm& b) {
    if (a.linear != b.linear || a.constant != b.constant) return false;
    return (a - b).is_affine();
}

Rational TropicalPolynomial::eval(const QVec& x) const {
    assert(!terms.empty());
    Rational best = terms[0].eval(x);
    for (std::size_t i = 1; i < terms.size(); ++i) {
        const Rational v = terms[i].eval(x);
        if (mode == Mode::Max ? v > best : v < best) best = v;
    }
    return best;
}

bool PiecewiseFunction::is_affine() const {
    for (const auto& [i, p] : pieces)
        if (!p.is_affine()) return false;
    return true;
}

const QuadraticForm& PiecewiseFunction::piece(int cell) const {
    const auto it = pieces.find(cell);
    if (it == pieces.end()) throw MissingPiece(cell);
    return it->second;
}

std::pair<TropicalCycle, PiecewiseFunction> refine(const TropicalCycle& c,
                                                   const TropicalPolynomial& g) {
    if (g.terms.empty()) throw ParseError("tropical polynomial needs at least one term");
    // Cut every weighted cell into the regions where one term dominates.
    // Regions of distinct terms overlap in lower dimension (or coincide when
    // the terms agree on the cell), so the full-dimensional pieces together
    // with their faces form the refined complex.
    const bool maxmode = g.mode == TropicalPolynomial::Mode::Max;
    std::vector<std::pair<Polyhedron, long long>> piece_list;
    std::map<std::string, bool> seen;
    for (const auto& [ci, w] : c.weights) {
        const Polyhedron& cell = c.cell(ci);
        for (std::size_t i = 0; i < g.terms.size(); ++i) {
            Polyhedron region = cell;
            for (std::size_t j = 0; j < g.terms.size() && !region.is_empty(); ++j) {
                if (i == j) continue;
                AffineForm d(sub(g.terms[i].linear, g.terms[j].linear),
                             g.terms[i].constant - g.terms[j].constant);
                if (!maxmode) d = AffineForm(neg(d.linear), -d.constant);
                if (is_zero_vec(d.linear)) {
                    if (d.constant.sign() < 0) region = empty_polyhedron(cell.ambient_dim);
                    continue;
                }
                region = intersect_with_halfspace(region, d);
                if (region.dim < cell.dim) region = empty_polyhedron(cell.ambient_dim);
            }
            if (region.is_empty() || region.dim != cell.dim) continue;
            if (seen.emplace(region.key(), true).second) piece_list.emplace_back(region, w);
        }
    }
    TropicalCycle refined =
        c.is_zero() ? c : make_cycle(c.complex.ambient_dim, piece_list);
    std::map<int, QuadraticForm> pieces;
    for (const auto& [i, w] : refined.weights) {
        const QVec p = relative_interior_point(refined.cell(i));
        Rational best = g.eval(p);
        const AffineForm* owner = nullptr;
        for (const auto& t : g.terms) {
            if (t.eval(p) != best) continue;
            if (owner == nullptr || lex_less(t.linear, owner->linear) ||
                (t.linear == owner->linear && t.constant < owner->constant))
                owner = &t;
        }
        assert(owner != nullptr);
        pieces.emplace(i, QuadraticForm::affine(*owner));
    }
    PiecewiseFunction f(std::make_shared<TropicalCycle>(refined), std::move(pieces));
    return {std::move(refined), std::move(f)};
}

ContinuityReport check_continuity(const PiecewiseFunction& f) {
    const TropicalCycle& c = *f.cycle;
    for (const auto& [i, w] : c.weights)
        (void)f.piece(i); // MissingPiece if absent
    ContinuityReport rep;
    const auto idx = c.weighted_cells();
    for (std::size_t a = 0; a < idx.size(); ++a) {
        for (std::size_t b = a + 1; b < idx.size(); ++b) {
            const Polyhedron meet = intersect(c.cell(idx[a]), c.cell(idx[b]));
            if (meet.is_empty()) continue;
            const QuadraticForm diff = f.piece(idx[a]) - f.piece(idx[b]);
            const QVec& v0 = meet.vertices[0];
            const QMat span = linear_span_rows(meet);
            bool zero = diff.eval(v0).is_zero();
            if (zero) {
                const QVec grad = diff.gradient(v0);
                for (const auto& s : span)
                    if (!dot(grad, s).is_zero()) { zero = false; break; }
            }
            if (zero && !diff.is_affine()) {
                for (std::size_t p = 0; p < span.size() && zero; ++p)
                    for (std::size_t q = p; q < span.size() && zero; ++q)
                        if (!dot(span[p], diff.hessian_times(span[q])).is_zero()) zero = false;
            }
            if (zero) continue;
            const auto [pt, delta] = nonvanishing_point(diff, meet);
            rep.continuous = false;
            rep.witness_face = c.complex.find_cell(meet);
            rep.witness_point = pt;
            rep.witness_delta = delta;
            return rep;
        }
    }
    return rep;
}

Rational evaluate(const PiecewiseFunction& f, const QVec& x) {
    const TropicalCycle& c = *f.cycle;
    for (const auto& [i, w] : c.weights)
        if (c.cell(i).contains(x)) return f.piece(i).eval(x);
    throw PointNotOnSupport();
}

namespace {

// Canonical representation of an affine function on aff(tau): linear part
// projected into lin(tau), constant fixed at the first vertex.
AffineForm restrict_affine_to(const AffineForm& w, const Polyhedron& tau) {
    const QMat span = linear_span_rows(tau);
    const QVec lin = project_onto_rowspace(w.linear, span);
    const Rational c = w.eval(tau.vertices[0]) - dot(lin, tau.vertices[0]);
    return AffineForm(lin, c);
}

} // namespace

CornerLocus corner_locus(const PiecewiseFunction& f) {
    if (!check_balancing(*f.cycle).balanced) throw NotBalanced();
    return corner_locus_unchecked(f);
}

CornerLocus corner_locus_unchecked(const PiecewiseFunction& f) {
    const TropicalCycle& c = *f.cycle;
    const int n = c.complex.ambient_dim;
    CornerLocus out;
    out.complex.ambient_dim = n;
    out.dim = c.dim - 1;
    if (c.is_zero() || c.dim <= 0) return out;
    const ContinuityReport cont = check_continuity(f);
    if (!cont.continuous) throw ContinuityViolated();

    std::map<int, std::vector<int>> above;
    for (const auto& [sigma, w] : c.weights)
        for (int tau : c.complex.facets_of[static_cast<std::size_t>(sigma)])
            above[tau].push_back(sigma);

    std::vector<std::pair<Polyhedron, AffineForm>> kept;
    for (const auto& [tau, sigmas] : above) {
        const Polyhedron& tau_cell = c.cell(tau);
        QVec lin = zero_vec(n);
        Rational cst;
        QVec t = zero_vec(n);
        for (int sigma : sigmas) {
            const ZVec v = lattice_normal_vector(c.cell(sigma), tau_cell);
            const QVec vq = to_qvec(v);
            const Rational m(c.weights.at(sigma));
            const QuadraticForm& piece = f.piece(sigma);
            lin = add(lin, scale(piece.hessian_times(vq), m));
            cst += m * dot(piece.linear, vq);
            t = add(t, scale(vq, m));
        }
        // Tangential correction D_t(f|_tau). For balanced cycles t already
        // lies in lin(tau); the projection makes the formula well defined at
        // unbalanced faces too, where the normal component survives.
        const QVec t_par = project_onto_rowspace(t, linear_span_rows(tau_cell));
        const QuadraticForm& p0 = f.piece(sigmas.front());
        lin = sub(lin, p0.hessian_times(t_par));
        cst -= dot(p0.linear, t_par);
        const AffineForm w = restrict_affine_to(AffineForm(lin, cst), tau_cell);
        if (is_zero_vec(w.linear) && w.constant.is_zero()) continue;
        kept.emplace_back(tau_cell, w);
    }
    if (kept.empty()) return out;
    std::vector<Polyhedron> cells;
    cells.reserve(kept.size());
    for (const auto& [cell, w] : kept) cells.push_back(cell);
    out.complex = build_complex_unchecked(n, cells);
    for (auto& [cell, w] : kept) {
        const int idx = out.complex.find_cell(cell);
        assert(idx >= 0);
        out.weight_functions.emplace(idx, std::move(w));
    }
    return out;
}

bool CornerLocus::has_integral_weights() const {
    for (const auto& [i, w] : weight_functions)
        if (!is_zero_vec(w.linear) || !w.constant.is_integer()) return false;
    return true;
}

TropicalCycle CornerLocus::as_cycle() const {
    if (!has_integral_weights()) throw NonIntegralWeight();
    std::vector<std::pair<Polyhedron, long long>> cells;
    for (const auto& [i, w] : weight_functions) {
        const Int num = w.constant.num();
        if (!num.fits_slong_p())
            throw TropkitError("corner-locus weight exceeds the machine integer range");
        cells.emplace_back(complex.cells[static_cast<std::size_t>(i)], mpz_get_si(num.get_mpz_t()));
    }
    TropicalCycle cyc = make_cycle(complex.ambient_dim, cells);
    cyc.dim = dim; // empty corner loci keep the declared dimension
    return cyc;
}

PsdResult psd_check(const QMat& m) {
    PsdResult res;
    const std::size_t k = m.size();
    QMat a = m;
    QMat r(k, QVec(k));
    for (std::size_t i = 0; i < k; ++i) r[i][i] = Rational(1);
    for (std::size_t i = 0; i < k; ++i) {
        const Rational pivot = a[i][i];
        if (pivot.sign() < 0) {
            res.psd = false;
            res.witness = r[i];
            res.value = pivot;
            return res;
        }
        if (pivot.is_zero()) {
            for (std::size_t j = 0; j < k; ++j) {
                if (j == i || a[i][j].is_zero()) continue;
                const Rational cc = a[i][j];
                const Rational d = a[j][j];
                const Rational t = d < Rational(2) ? -cc : -cc / d;
                res.psd = false;
                res.witness = add(r[i], scale(r[j], t));
                res.value = d * t * t + Rational(2) * cc * t;
                assert(res.value.sign() < 0);
                return res;
            }
            continue;
        }
        std::vector<Rational> factors(k);
        for (std::size_t j = i + 1; j < k; ++j) factors[j] = a[j][i] / pivot;
        for (std::size_t j = i + 1; j < k; ++j) {
            if (factors[j].is_zero()) continue;
            for (std::size_t l = 0; l < k; ++l) a[j][l] = a[j][l] - factors[j] * a[i][l];
            r[j] = sub(r[j], scale(r[i], factors[j]));
        }
        for (std::size_t j = i + 1; j < k; ++j) {
            if (factors[j].is_zero()) continue;
            for (std::size_t l = 0; l < k; ++l) a[l][j] = a[l][j] - factors[j] * a[l][i];
        }
    }
    return res;
}

std::pair<QVec, Rational> nonvanishing_point(const QuadraticForm& q, const Polyhedron& p) {
    const QVec p0 = relative_interior_point(p);
    const Rational v0 = q.eval(p0);
    if (!v0.is_zero()) return {p0, v0};
    const QMat span = linear_span_rows(p);
    QMat dirs = span;
    for (std::size_t i = 0; i < span.size(); ++i)
        for (std::size_t j = i + 1; j < span.size(); ++j) dirs.push_back(add(span[i], span[j]));
    const QVec grad = q.gradient(p0);
    for (const auto& dir : dirs) {
        const Rational s = dot(grad, dir);
        const Rational qq = dot(dir, q.hessian_times(dir));
        if (s.is_zero() && qq.is_zero()) continue;
        // Largest feasible step along dir from the relative interior.
        Rational eps(1);
        bool bounded_step = false;
        for (const auto& f : p.inequalities) {
            const Rational slope = dot(f.linear, dir);
            if (slope.sign() >= 0) continue;
            const Rational limit = f.eval(p0) / (-slope);
            if (!bounded_step || limit < eps) eps = limit;
            bounded_step = true;
        }
        eps = eps / Rational(2);
        if (!s.is_zero() && !qq.is_zero()) {
            const Rational cap = s.abs() / qq.abs();
            if (cap < eps) eps = cap;
        }
        const Rational value = eps * s + eps * eps * qq / Rational(2);
        assert(!value.is_zero());
        return {add(p0, scale(dir, eps)), value};
    }
    assert(false && "form vanishes identically on the polyhedron");
    return {p0, Rational(0)};
}

PshReport check_psh(const PiecewiseFunction& f) {
    const TropicalCycle& c = *f.cycle;
    PshReport rep;
    const CornerLocus corner = corner_locus(f);
    for (const auto& [i, w] : c.weights) {
        const QuadraticForm& piece = f.piece(i);
        if (piece.is_affine()) continue;
        const ZMat basis = span_lattice(c.cell(i));
        if (basis.empty()) continue;
        const std::size_t k = basis.size();
        QMat restricted(k, QVec(k));
        std::vector<QVec> bq;
        for (const auto& b : basis) bq.push_back(to_qvec(b));
        for (std::size_t a = 0; a < k; ++a)
            for (std::size_t b = 0; b < k; ++b)
                restricted[a][b] = dot(bq[a], piece.hessian_times(bq[b]));
        const PsdResult psd = psd_check(restricted);
        if (!psd.psd) {
            QVec dir = zero_vec(c.complex.ambient_dim);
            for (std::size_t a = 0; a < k; ++a) dir = add(dir, scale(bq[a], psd.witness[a]));
            rep.hessian_violations.push_back({i, std::move(dir), psd.value});
        }
    }
    for (const auto& [idx, w] : corner.weight_functions) {
        const Polyhedron& tau = corner.complex.cells[static_cast<std::size_t>(idx)];
        std::optional<CornerViolation> viol;
        for (const auto& v : tau.vertices) {
            const Rational val = w.eval(v);
            if (val.sign() < 0) { viol = CornerViolation{idx, v, val}; break; }
        }
        if (!viol) {
            const QVec& v0 = tau.vertices[0];
            auto probe = [&](const QVec& dir, const Rational& slope) {
                // Walk far enough along dir that the negative slope dominates.
                const Rational base = w.eval(v0);
                const Rational k_steps = base / (-slope) + Rational(1);
                const QVec pt = add(v0, scale(dir, k_steps));
                viol = CornerViolation{idx, pt, w.eval(pt)};
            };
            for (const auto& r : tau.rays) {
                const Rational slope = dot(w.linear, r);
                if (slope.sign() < 0) { probe(r, slope); break; }
            }
            if (!viol)
                for (const auto& l : tau.lineality) {
                    const Rational slope = dot(w.linear, l);
                    if (slope.sign() > 0) { probe(neg(l), -slope); break; }
                    if (slope.sign() < 0) { probe(l, slope); break; }
                }
        }
        if (viol) rep.corner_violations.push_back(std::move(*viol));
    }
    rep.verdict = rep.hessian_violations.empty() && rep.corner_violations.empty();
    return rep;
}

PiecewiseFunction restrict_to(const PiecewiseFunction& f, const TropicalCycle& d) {
    const TropicalCycle& c = *f.cycle;
    std::map<int, QuadraticForm> pieces;
    for (const auto& [i, w] : d.weights) {
        const Polyhedron& cell = d.cell(i);
        bool found = false;
        for (const auto& [j, wc] : c.weights) {
            if (c.cell(j).contains_poly(cell)) {
                pieces.emplace(i, f.piece(j));
                found = true;
                break;
            }
        }
        if (!found) throw SupportNotContained();
    }
    return PiecewiseFunction(std::make_shared<TropicalCycle>(d), std::move(pieces));
}

PiecewiseFunction add_global(const PiecewiseFunction& f, const QuadraticForm& g) {
    PiecewiseFunction out = f;
    for (auto& [i, p] : out.pieces) p = p + g;
    return out;
}

} // namespace tropkit
