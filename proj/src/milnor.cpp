#include "qsing/milnor.hpp"
#include "qsing/error.hpp"
#include "qsing/groebner.hpp"

#include <algorithm>

namespace qsing {

long MilnorRing::index_of(const Monomial& m) const {
    auto it = std::find(basis.begin(), basis.end(), m);
    return it == basis.end() ? -1 : static_cast<long>(it - basis.begin());
}

Poly determinant(const std::vector<std::vector<Poly>>& m) {
    size_t n = m.size();
    if (n == 0)
        return Poly::constant(0, 1);
    size_t nv = m[0][0].nvars();
    if (n == 1)
        return m[0][0];
    Poly det(nv);
    for (size_t col = 0; col < n; ++col) {
        if (m[0][col].is_zero())
            continue;
        std::vector<std::vector<Poly>> minor;
        for (size_t r = 1; r < n; ++r) {
            std::vector<Poly> row;
            for (size_t c = 0; c < n; ++c)
                if (c != col)
                    row.push_back(m[r][c]);
            minor.push_back(row);
        }
        Poly term = m[0][col] * determinant(minor);
        if (col % 2 == 0)
            det += term;
        else
            det -= term;
    }
    return det;
}

Poly hessian_determinant(const Poly& W) {
    size_t n = W.nvars();
    if (n == 0)
        return Poly::constant(0, 1);
    std::vector<std::vector<Poly>> h(n, std::vector<Poly>(n));
    for (size_t i = 0; i < n; ++i) {
        Poly di = W.derivative(i);
        for (size_t j = 0; j < n; ++j)
            h[i][j] = di.derivative(j);
    }
    return determinant(h);
}

MilnorRing milnor_ring(const Poly& W, const std::vector<Rational>& q) {
    MilnorRing r;
    r.W = W;
    r.q = q;
    size_t N = q.size();
    r.c_hat = 0;
    for (const auto& qi : q)
        r.c_hat += 1 - 2 * qi;
    std::vector<Poly> partials;
    for (size_t i = 0; i < N; ++i)
        partials.push_back(W.derivative(i));
    r.gb = groebner_basis(partials);
    if (!standard_monomials(r.gb, N, TermOrder::grevlex(), r.basis) || r.basis.empty())
        invariant_violation("restricted polynomial has a non-isolated critical point");
    std::stable_sort(r.basis.begin(), r.basis.end(), [&](const Monomial& a, const Monomial& b) {
        Rational da = weighted_degree(a, q), db = weighted_degree(b, q);
        if (da != db)
            return da < db;
        return TermOrder::grevlex().less(a, b);
    });
    r.mu = static_cast<long>(r.basis.size());
    bool found = false;
    for (const auto& m : r.basis) {
        if (weighted_degree(m, q) == r.c_hat) {
            if (found)
                invariant_violation("several basis monomials of top weighted degree");
            found = true;
            r.socle = m;
        }
    }
    if (!found)
        invariant_violation("no basis monomial of weighted degree c_hat");
    r.hessian_nf = normal_form(hessian_determinant(W), r.gb);
    if (N == 0)
        r.hessian_nf = Poly::constant(0, 1);
    r.hessian_socle_coeff = r.hessian_nf.coeff(r.socle);
    if (sgn(r.hessian_socle_coeff) == 0)
        invariant_violation("Hessian class does not reach the socle");
    return r;
}

MilnorRing milnor_basis(const QSingularity& s) {
    return milnor_ring(s.W, s.q);
}

Poly hessian_class(const MilnorRing& r) {
    return r.hessian_nf;
}

Poly reduce(const MilnorRing& r, const Poly& f) {
    if (r.nvars() == 0)
        return f;
    return normal_form(f, r.gb);
}

Vector basis_coordinates(const MilnorRing& r, const Poly& f) {
    Poly nf = reduce(r, f);
    Vector out(r.basis.size(), Rational(0));
    for (const auto& [m, c] : nf.terms()) {
        long idx = r.index_of(m);
        if (idx < 0)
            invariant_violation("normal form left the standard basis");
        out[idx] = c;
    }
    return out;
}

Rational residue(const MilnorRing& r, const Poly& f) {
    Poly nf = reduce(r, f);
    return Rational(r.mu) * nf.coeff(r.socle) / r.hessian_socle_coeff;
}

Rational residue_pairing(const MilnorRing& r, const Poly& f, const Poly& g) {
    return residue(r, f * g);
}

Matrix residue_gram(const MilnorRing& r) {
    size_t n = r.basis.size();
    Matrix g = zero_matrix(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            g[i][j] = residue(r, Poly::monomial(monomial_product(r.basis[i], r.basis[j])));
    return g;
}

} // namespace qsing
