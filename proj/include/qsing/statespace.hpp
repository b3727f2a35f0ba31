#pragma once

#include "qsing/milnor.hpp"
#include "qsing/singular.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qsing {

struct Sector {
    GroupElement gamma;
    std::vector<size_t> fixed_vars;
    size_t N_gamma = 0;
    Poly W_gamma;        // in the fixed variables only
    MilnorRing milnor;   // ring of W_gamma (one-dimensional when N_gamma = 0)
    Rational iota;
    bool is_ramond = false;
    std::vector<Monomial> invariants;  // exponents over fixed_vars
    Rational deg_W;                     // N_gamma + 2 iota
};

struct BasisClass {
    size_t sector;
    Monomial monomial;  // over the sector's fixed variables
    std::string label;
};

struct StateSpace {
    QSingularity singularity;
    SymmetryGroup group;
    std::vector<Sector> sectors;  // parallel to group.elements
    std::vector<BasisClass> basis;
    std::vector<Rational> degrees;  // deg_W per basis class
    Matrix eta;
    Matrix eta_inv;
    size_t unit = 0;
    // Filled by tensor_state_space: factor basis indices per class.
    std::vector<std::pair<size_t, size_t>> tensor_factors;

    size_t dim() const { return basis.size(); }
    size_t sector_index(const GroupElement& g) const { return group.index_of(g); }
    const Sector& sector_of(size_t basis_index) const { return sectors[basis[basis_index].sector]; }
    // Basis class in sector g with the given monomial, or -1.
    long find_class(const GroupElement& g, const Monomial& m) const;
    std::vector<size_t> classes_in_sector(size_t sector) const;
};

Sector build_sector(const QSingularity& s, const SymmetryGroup& G, const GroupElement& gamma);
std::vector<Monomial> invariant_basis(const Sector& sector, const SymmetryGroup& G);
// Errors: MissingJ.
StateSpace build_state_space(const QSingularity& s, const SymmetryGroup& G);
// Errors: VariableCollision.
StateSpace tensor_state_space(const StateSpace& H1, const StateSpace& H2);

std::string class_label(const StateSpace& H, const Sector& sector, const Monomial& m);

} // namespace qsing
