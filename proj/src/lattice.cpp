#include "tropkit/lattice.hpp"

#include <cassert>

namespace tropkit {

ZVec primitive_vector(const QVec& v) { return primitive(v); }

ZMat lattice_basis(const QMat& span_rows, int n) {
    QMat basis = row_space_basis(span_rows);
    if (basis.empty()) return {};
    // Integer points of the span = integer kernel of its orthogonal complement.
    QMat orth = q_kernel(basis, n);
    ZMat orth_z;
    orth_z.reserve(orth.size());
    for (const auto& row : orth) orth_z.push_back(primitive(row));
    return z_kernel(orth_z, n);
}

bool is_saturated_basis(const ZMat& basis) {
    if (basis.empty()) return true;
    for (const auto& d : snf_divisors(basis))
        if (d != 1) return false;
    return true;
}

ZVec reduce_mod_lattice(ZVec v, const ZMat& hnf_basis) {
    for (const auto& row : hnf_basis) {
        std::size_t p = 0;
        while (p < row.size() && row[p] == 0) ++p;
        if (p == row.size()) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), v[p].get_mpz_t(), row[p].get_mpz_t());
        if (q == 0) continue;
        for (std::size_t j = 0; j < v.size(); ++j) v[j] -= q * row[j];
    }
    return v;
}

ZVec complete_to_unimodular(const ZMat& rows, int k) {
    assert(static_cast<int>(rows.size()) == k - 1);
    if (k == 1) return {Int(1)};
    // Signed maximal minors: det[rows; u] = sum_j u_j * minor_j.
    ZVec minors(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        ZMat sub(rows.size(), ZVec(static_cast<std::size_t>(k - 1)));
        for (std::size_t i = 0; i < rows.size(); ++i) {
            std::size_t c = 0;
            for (int jj = 0; jj < k; ++jj) {
                if (jj == j) continue;
                sub[i][c++] = rows[i][static_cast<std::size_t>(jj)];
            }
        }
        Int m = z_det(sub);
        if ((k - 1 + j) % 2 != 0) m = -m;
        minors[static_cast<std::size_t>(j)] = m;
    }
    // Extended gcd chain over the minors.
    ZVec u(static_cast<std::size_t>(k), Int(0));
    Int g = 0;
    for (int j = 0; j < k; ++j) {
        const Int& m = minors[static_cast<std::size_t>(j)];
        if (m == 0) continue;
        if (g == 0) {
            g = abs(m);
            u[static_cast<std::size_t>(j)] = m > 0 ? 1 : -1;
            continue;
        }
        Int s, t, ng;
        mpz_gcdext(ng.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
        for (auto& x : u) x *= s;
        u[static_cast<std::size_t>(j)] = t;
        g = ng;
    }
    assert(g == 1); // rows span a saturated corank-1 lattice
    return u;
}

} // namespace tropkit
