#include "tropkit/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace tropkit {

Rational dot(const QVec& a, const QVec& b) {
    assert(a.size() == b.size());
    Rational s;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

QVec add(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

QVec sub(const QVec& a, const QVec& b) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

QVec scale(const QVec& a, const Rational& c) {
    QVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
    return r;
}

QVec neg(const QVec& a) { return scale(a, Rational(-1)); }

bool is_zero_vec(const QVec& a) {
    for (const auto& x : a)
        if (!x.is_zero()) return false;
    return true;
}

QVec zero_vec(int n) { return QVec(static_cast<std::size_t>(n)); }

bool lex_less(const QVec& a, const QVec& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
    }
    return a.size() < b.size();
}

QVec to_qvec(const ZVec& v) {
    QVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
    return r;
}

ZVec zneg(const ZVec& v) {
    ZVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

bool is_zero_zvec(const ZVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

int rref(QMat& m, std::vector<int>* pivots) {
    if (pivots) pivots->clear();
    if (m.empty()) return 0;
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
        std::size_t piv = row;
        while (piv < m.size() && m[piv][col].is_zero()) ++piv;
        if (piv == m.size()) continue;
        std::swap(m[row], m[piv]);
        const Rational inv = Rational(1) / m[row][col];
        for (std::size_t j = col; j < cols; ++j) m[row][j] = m[row][j] * inv;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == row || m[i][col].is_zero()) continue;
            const Rational f = m[i][col];
            for (std::size_t j = col; j < cols; ++j)
                m[i][j] = m[i][j] - f * m[row][j];
        }
        if (pivots) pivots->push_back(static_cast<int>(col));
        ++row;
    }
    return static_cast<int>(row);
}

int rank(QMat m) { return rref(m); }

QMat row_space_basis(QMat m) {
    const int r = rref(m);
    QMat out;
    out.reserve(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) out.push_back(to_qvec(primitive(m[static_cast<std::size_t>(i)])));
    return out;
}

QMat q_kernel(const QMat& m, int n) {
    QMat a = m;
    std::vector<int> pivots;
    const int r = a.empty() ? 0 : rref(a, &pivots);
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    QMat out;
    for (int free = 0; free < n; ++free) {
        if (is_pivot[static_cast<std::size_t>(free)]) continue;
        QVec x = zero_vec(n);
        x[static_cast<std::size_t>(free)] = Rational(1);
        for (int i = 0; i < r; ++i)
            x[static_cast<std::size_t>(pivots[static_cast<std::size_t>(i)])] =
                -a[static_cast<std::size_t>(i)][static_cast<std::size_t>(free)];
        out.push_back(std::move(x));
    }
    return out;
}

std::optional<QVec> solve(QMat a, QVec b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
    std::vector<int> pivots;
    const int r = a.empty() ? 0 : rref(a, &pivots);
    QVec x(cols);
    for (int i = 0; i < r; ++i) {
        const int p = pivots[static_cast<std::size_t>(i)];
        if (p == static_cast<int>(cols)) return std::nullopt; // pivot in the rhs column
        x[static_cast<std::size_t>(p)] = a[static_cast<std::size_t>(i)][cols];
    }
    return x;
}

QVec project_onto_rowspace(const QVec& v, const QMat& basis) {
    if (basis.empty()) return zero_vec(static_cast<int>(v.size()));
    // Solve (B B^T) c = B v^T, projection = c^T B.
    const std::size_t k = basis.size();
    QMat gram(k, QVec(k));
    QVec rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram[i][j] = dot(basis[i], basis[j]);
        rhs[i] = dot(basis[i], v);
    }
    const auto c = solve(gram, rhs);
    assert(c.has_value()); // Gram matrix of independent rows is invertible
    QVec out = zero_vec(static_cast<int>(v.size()));
    for (std::size_t i = 0; i < k; ++i) out = add(out, scale(basis[i], (*c)[i]));
    return out;
}

ZVec primitive(const QVec& v) {
    Int l = 1;
    for (const auto& x : v) l = lcm(l, x.den());
    ZVec w(v.size());
    Int g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        w[i] = v[i].num() * (l / v[i].den());
        g = gcd(g, w[i]);
    }
    if (g == 0) throw ZeroVector();
    for (auto& x : w) x /= g;
    return w;
}

ZVec primitive_z(const ZVec& v) {
    Int g = 0;
    for (const auto& x : v) g = gcd(g, x);
    if (g == 0) throw ZeroVector();
    ZVec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = v[i] / g;
    return w;
}

ZMat hnf(ZMat a) {
    if (a.empty()) return {};
    const std::size_t cols = a[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
        // Clear the column below `row` with gcd steps.
        while (true) {
            std::size_t piv = a.size();
            for (std::size_t i = row; i < a.size(); ++i) {
                if (a[i][col] != 0 && (piv == a.size() ||
                                       cmp(abs(a[i][col]), abs(a[piv][col])) < 0))
                    piv = i;
            }
            if (piv == a.size()) break;
            std::swap(a[row], a[piv]);
            bool cleared = true;
            for (std::size_t i = row + 1; i < a.size(); ++i) {
                if (a[i][col] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[row][col].get_mpz_t());
                for (std::size_t j = 0; j < cols; ++j) a[i][j] -= q * a[row][j];
                if (a[i][col] != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (a[row][col] == 0) continue;
        if (a[row][col] < 0)
            for (std::size_t j = 0; j < cols; ++j) a[row][j] = -a[row][j];
        // Reduce entries above the pivot into [0, pivot).
        for (std::size_t i = 0; i < row; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), a[i][col].get_mpz_t(), a[row][col].get_mpz_t());
            if (q == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= q * a[row][j];
        }
        ++row;
    }
    a.resize(row);
    return a;
}

std::vector<Int> snf_divisors(ZMat a) {
    std::vector<Int> out;
    std::size_t top = 0;
    while (true) {
        // Find a nonzero entry in the submatrix at (top, top).
        std::size_t pi = a.size(), pj = 0;
        for (std::size_t i = top; i < a.size(); ++i)
            for (std::size_t j = top; j < (a.empty() ? 0 : a[0].size()); ++j)
                if (a[i][j] != 0 &&
                    (pi == a.size() || cmp(abs(a[i][j]), abs(a[pi][pj])) < 0)) {
                    pi = i;
                    pj = j;
                }
        if (pi == a.size()) break;
        std::swap(a[top], a[pi]);
        for (auto& row : a) std::swap(row[top], row[pj]);
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = top + 1; i < a.size(); ++i) {
                if (a[i][top] == 0) continue;
                Int q = a[i][top] / a[top][top];
                for (std::size_t j = top; j < a[0].size(); ++j) a[i][j] -= q * a[top][j];
                if (a[i][top] != 0) { std::swap(a[top], a[i]); dirty = true; }
            }
            for (std::size_t j = top + 1; j < a[0].size(); ++j) {
                if (a[top][j] == 0) continue;
                Int q = a[top][j] / a[top][top];
                for (std::size_t i = top; i < a.size(); ++i) a[i][j] -= q * a[i][top];
                if (a[top][j] != 0) {
                    for (std::size_t i = top; i < a.size(); ++i) std::swap(a[i][top], a[i][j]);
                    dirty = true;
                }
            }
        }
        // Enforce divisibility of later entries by the pivot.
        bool fixed = true;
        for (std::size_t i = top + 1; i < a.size() && fixed; ++i)
            for (std::size_t j = top + 1; j < a[0].size() && fixed; ++j)
                if (a[i][j] % a[top][top] != 0) {
                    for (std::size_t jj = top; jj < a[0].size(); ++jj) a[top][jj] += a[i][jj];
                    fixed = false;
                }
        if (!fixed) continue;
        out.push_back(abs(a[top][top]));
        ++top;
        if (top >= a.size() || top >= a[0].size()) break;
    }
    return out;
}

ZMat z_kernel(const ZMat& a, int n) {
    // Rows of U with U A^T = H; rows mapping to zero form the kernel basis.
    ZMat work(static_cast<std::size_t>(n), ZVec(a.size() + static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) work[static_cast<std::size_t>(i)][j] = a[j][static_cast<std::size_t>(i)];
        work[static_cast<std::size_t>(i)][a.size() + static_cast<std::size_t>(i)] = 1;
    }
    // Row-reduce the first a.size() columns only (Hermite-style), carrying U.
    const std::size_t cols = a.size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < work.size(); ++col) {
        while (true) {
            std::size_t piv = work.size();
            for (std::size_t i = row; i < work.size(); ++i)
                if (work[i][col] != 0 && (piv == work.size() ||
                                          cmp(abs(work[i][col]), abs(work[piv][col])) < 0))
                    piv = i;
            if (piv == work.size()) break;
            std::swap(work[row], work[piv]);
            bool cleared = true;
            for (std::size_t i = row + 1; i < work.size(); ++i) {
                if (work[i][col] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), work[i][col].get_mpz_t(), work[row][col].get_mpz_t());
                for (std::size_t j = 0; j < work[i].size(); ++j) work[i][j] -= q * work[row][j];
                if (work[i][col] != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (work[row][col] != 0) ++row;
    }
    ZMat kernel;
    for (std::size_t i = row; i < work.size(); ++i) {
        ZVec u(static_cast<std::size_t>(n));
        bool zero_image = true;
        for (std::size_t j = 0; j < cols; ++j)
            if (work[i][j] != 0) { zero_image = false; break; }
        if (!zero_image) continue;
        for (int j = 0; j < n; ++j) u[static_cast<std::size_t>(j)] = work[i][cols + static_cast<std::size_t>(j)];
        kernel.push_back(std::move(u));
    }
    return hnf(kernel);
}

Int z_det(ZMat a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return sign > 0 ? a[n - 1][n - 1] : Int(-a[n - 1][n - 1]);
}

} // namespace tropkit
