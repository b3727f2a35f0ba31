#pragma once

#include "qsing/correlator.hpp"
#include "qsing/milnor.hpp"

#include <map>
#include <string>
#include <vector>

namespace qsing {

enum class Family { A, D, E6, E7, E8 };

// Accepts "A", "D", "E6", "E7", "E8". Errors: UnknownFamily.
Family parse_family(const std::string& tag);
std::string to_string(Family f);

// The singularity, its Milnor basis in the family's flat-coordinate order, and the base
// volume form (as a multiple of dx or dx^dy) at which the closed-form tables are stated.
struct FamilyData {
    Family family = Family::A;
    int n = 0;
    Poly W;
    std::vector<std::string> vars;
    std::vector<Rational> q;
    Rational c_hat;
    std::vector<Monomial> basis;        // phi_nu, one per flat coordinate
    std::vector<std::string> labels;    // coordinate names s_...
    std::vector<Rational> sigma;        // weight of s_nu: 1 - wt(phi_nu)
    std::vector<Rational> degrees;      // deg_C of s_nu: wt(phi_nu)
    Rational base_form;

    size_t dim() const { return basis.size(); }
    long index_of_label(const std::string& label) const;
};

// A_n: x^(n+1), n >= 1. D: x^n + x*y^2 (the D_(n+1) singularity), n >= 2. E6: x^3+y^4,
// E7: x^3+x*y^3, E8: x^3+y^5 (n ignored). Errors: UnknownFamily.
FamilyData family_data(Family f, int n);

// Flat coordinates of the unfolding W + sum t_nu phi_nu, both directions, each truncated
// at total degree 'order'. Polynomials live in dim() variables indexed like the basis.
struct FlatCoordMap {
    FamilyData data;
    int order = 0;
    std::vector<Poly> s_of_t;
    std::vector<Poly> t_of_s;
};

FlatCoordMap flat_coordinates(Family f, int n, int order);
// s(t(s)) == s through the truncation order.
bool inversion_holds(const FlatCoordMap& map);
// Largest total degree any flat-coordinate term can have (the series are polynomials).
int flat_coordinate_degree_bound(const FamilyData& data);

// Two-, three- and four-point B-model data over flat-coordinate positions; keys are sorted.
struct BModelTables {
    FamilyData data;
    Rational primitive_scale;  // relative to data.base_form
    Matrix eta;
    std::map<std::vector<size_t>, Rational> c3;
    std::map<std::vector<size_t>, Rational> c4;
    bool quartic_complete = true;

    Rational three(std::vector<size_t> key) const;
    Rational four(std::vector<size_t> key) const;
};

// Closed forms (A, D) or transcribed tables (E6, E7, E8), multiplied by primitive_scale.
BModelTables bmodel_correlators(Family f, int n, const Rational& primitive_scale = 1);
// Independent recomputation: residues in the deformed Milnor ring along flat-coordinate axes.
BModelTables bmodel_oracle(Family f, int n, const Rational& primitive_scale = 1);

struct BPotential {
    Family family = Family::A;
    int n = 0;
    Rational primitive_scale;
    // Accumulated quartic factor lambda; the primitive form carries c = lambda^(-c_hat),
    // kept as (lambda, c_hat) and never evaluated.
    Rational lambda = 1;
    Rational c_hat;
    Matrix eta;
    PotentialSeries F3;
    PotentialSeries F4;
    bool quartic_complete = true;
};

BPotential bmodel_potential(Family f, int n, const Rational& primitive_scale = 1);
BPotential potential_from_tables(const BModelTables& tables);
// F3 fixed, F4 multiplied by lambda. Errors: ZeroLambda.
BPotential rescale_potential(const BPotential& p, const Rational& lambda);

} // namespace qsing
