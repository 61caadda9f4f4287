#pragma once

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "tropkit/cycle.hpp"

namespace tropkit {

// f(x) = 1/2 x^T Q x + linear.x + constant with Q the symmetric rational
// Hessian. An empty Q encodes an affine piece.
struct QuadraticForm {
    QMat hessian;
    QVec linear;
    Rational constant;

    QuadraticForm() = default;
    QuadraticForm(QMat q, QVec lin, Rational c)
        : hessian(std::move(q)), linear(std::move(lin)), constant(std::move(c)) {}

    static QuadraticForm affine(const AffineForm& f) {
        return QuadraticForm({}, f.linear, f.constant);
    }

    bool is_affine() const;
    Rational eval(const QVec& x) const;
    QVec gradient(const QVec& x) const; // Q x + linear
    QVec hessian_times(const QVec& v) const;

    QuadraticForm operator-(const QuadraticForm& o) const;
    QuadraticForm operator+(const QuadraticForm& o) const;

    friend bool operator==(const QuadraticForm& a, const QuadraticForm& b);
};

struct TropicalPolynomial {
    enum class Mode { Max, Min };
    Mode mode = Mode::Max;
    std::vector<AffineForm> terms;

    Rational eval(const QVec& x) const;
};

// A continuous function on the support of a cycle, quadratic on each
// weighted cell.
class PiecewiseFunction {
public:
    std::shared_ptr<const TropicalCycle> cycle;
    std::map<int, QuadraticForm> pieces; // weighted cell index -> piece

    PiecewiseFunction() = default;
    PiecewiseFunction(std::shared_ptr<const TropicalCycle> c, std::map<int, QuadraticForm> p)
        : cycle(std::move(c)), pieces(std::move(p)) {}

    bool is_affine() const;
    const QuadraticForm& piece(int cell) const;
};

// Subdivides C so that one term of g is active per maximal cell; the
// returned function is that term, cellwise. Ties go to the lexicographically
// smallest (linear, constant) active term.
std::pair<TropicalCycle, PiecewiseFunction> refine(const TropicalCycle& c,
                                                   const TropicalPolynomial& g);

struct ContinuityReport {
    bool continuous = true;
    int witness_face = -1; // complex cell index of the disagreeing face
    QVec witness_point;
    Rational witness_delta; // nonzero difference of the two pieces there
};

ContinuityReport check_continuity(const PiecewiseFunction& f);

Rational evaluate(const PiecewiseFunction& f, const QVec& x);

// The corner locus f.C: codimension-1 cells of the source complex carrying
// the affine weight functions
//   w_tau(x) = sum_sigma m_sigma <grad f_sigma(x), v_sigma> - D_t(f|_tau)(x),
// with v_sigma the canonical lattice normal representatives and
// t = sum m_sigma v_sigma in lin(tau). Weight functions are stored in the
// canonical tau-restricted form; identically-zero cells are pruned.
struct CornerLocus {
    PolyhedralComplex complex;
    int dim = -1; // d - 1
    std::map<int, AffineForm> weight_functions;

    bool is_zero() const { return weight_functions.empty(); }
    bool has_integral_weights() const;
    // The corner locus as an integer-weighted tropical cycle. Throws
    // NonIntegralWeight unless every weight function is a nonzero integer
    // constant.
    TropicalCycle as_cycle() const;
};

CornerLocus corner_locus(const PiecewiseFunction& f);

// Same computation without the balancing precondition. The tangential
// correction projects t onto lin(tau), so the weights are well defined (and
// generically nonzero) even at unbalanced faces; used by diagnostics that
// exhibit how balancing makes global affine functions corner-free.
CornerLocus corner_locus_unchecked(const PiecewiseFunction& f);

struct HessianViolation {
    int cell;
    QVec direction;  // tangent direction with positive/negative defect
    Rational value;  // direction^T Q direction (negative for psh failures)
};

struct CornerViolation {
    int face;
    QVec point;
    Rational value; // negative weight value at the point
};

struct PshReport {
    bool verdict = true;
    std::vector<HessianViolation> hessian_violations;
    std::vector<CornerViolation> corner_violations;
};

// Weak tropical plurisubharmonicity: facewise Hessians positive semidefinite
// on each cell's tangent space, and all corner-locus weight functions
// nonnegative on their cells.
PshReport check_psh(const PiecewiseFunction& f);

// Restriction of f to a subcycle whose maximal cells are contained in
// maximal cells of f's cycle. Throws SupportNotContained.
PiecewiseFunction restrict_to(const PiecewiseFunction& f, const TropicalCycle& d);

// Adds a global form to every piece (corner loci are invariant under this).
PiecewiseFunction add_global(const PiecewiseFunction& f, const QuadraticForm& g);

// Exact PSD test by symmetric Gaussian elimination with diagonal pivots.
// On failure returns a witness x with x^T M x < 0.
struct PsdResult {
    bool psd = true;
    QVec witness;
    Rational value;
};
PsdResult psd_check(const QMat& m);

// Deterministic point of P where the quadratic form does not vanish;
// requires that the form is not identically zero on P.
std::pair<QVec, Rational> nonvanishing_point(const QuadraticForm& q, const Polyhedron& p);

} // namespace tropkit
