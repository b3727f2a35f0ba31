#pragma once

#include "qsing/singular.hpp"

#include <vector>

namespace qsing {

struct MilnorRing {
    Poly W;
    std::vector<Rational> q;
    Rational c_hat;
    std::vector<Poly> gb;          // grevlex Groebner basis of Jac(W)
    std::vector<Monomial> basis;   // weighted degree, then grevlex ascending
    long mu = 0;
    Poly hessian_nf;
    Monomial socle;
    Rational hessian_socle_coeff;  // coefficient of the socle in hessian_nf

    size_t nvars() const { return q.size(); }
    // Position of m in the basis, or -1.
    long index_of(const Monomial& m) const;
};

// Works for any nondegenerate quasi-homogeneous W with weights q, including zero variables
// (then the ring is the one-dimensional field).
MilnorRing milnor_ring(const Poly& W, const std::vector<Rational>& q);
MilnorRing milnor_basis(const QSingularity& s);

Poly hessian_determinant(const Poly& W);
Poly hessian_class(const MilnorRing& r);

Poly reduce(const MilnorRing& r, const Poly& f);
// Coordinates of the normal form of f in the standard basis.
Vector basis_coordinates(const MilnorRing& r, const Poly& f);

// mu * (socle coefficient of NF f) / (socle coefficient of NF Hess).
Rational residue(const MilnorRing& r, const Poly& f);
Rational residue_pairing(const MilnorRing& r, const Poly& f, const Poly& g);
Matrix residue_gram(const MilnorRing& r);

Poly determinant(const std::vector<std::vector<Poly>>& m);

} // namespace qsing
