#pragma once

#include "qsing/poly.hpp"
#include "qsing/snf.hpp"

#include <string>
#include <vector>

namespace qsing {

struct Weights {
    std::vector<Rational> q;
    long d = 1;
    std::vector<long> n;  // q_i = n_i / d
};

struct QSingularity {
    Poly W;
    std::vector<std::string> vars;
    IntMatrix B;  // one row per monomial of W
    std::vector<Rational> q;
    long d = 1;
    std::vector<long> n;
    Rational c_hat;
    long mu = 0;
    std::vector<Poly> jacobian_gb;  // grevlex

    size_t nvars() const { return vars.size(); }
};

IntMatrix exponent_matrix(const Poly& W);

// Unique positive solution of B q = 1. Errors: NonUniqueWeights, NoPositiveSolution.
Weights compute_weights(const Poly& W);

// Errors: NonIsolatedSingularity, plus those of compute_weights.
QSingularity check_nondegenerate(const Poly& W, const std::vector<std::string>& vars);
QSingularity singularity_from_text(const std::string& text,
                                   const std::optional<std::vector<std::string>>& vars = std::nullopt);

// Diagonal symmetry as phases Theta_i in [0,1); group law is addition mod 1.
using GroupElement = std::vector<Rational>;

GroupElement group_identity(size_t n);
GroupElement group_add(const GroupElement& a, const GroupElement& b);
GroupElement group_inverse(const GroupElement& a);
GroupElement group_power(const GroupElement& a, long k);
long element_order(const GroupElement& a);
bool is_symmetry(const QSingularity& s, const GroupElement& g);
std::string render_element(const GroupElement& g);

struct SymmetryGroup {
    std::vector<GroupElement> elements;  // sorted lexicographically by phase vector
    std::vector<GroupElement> generators;
    bool contains_J = false;

    size_t order() const { return elements.size(); }
    bool contains(const GroupElement& g) const;
    size_t index_of(const GroupElement& g) const;  // throws ElementNotInGroup
};

SymmetryGroup max_diagonal_group(const QSingularity& s);
GroupElement exponential_grading_element(const QSingularity& s);
// Errors: ElementNotInGroup, MissingJ.
SymmetryGroup subgroup_from_generators(const QSingularity& s, const SymmetryGroup& G_W,
                                       const std::vector<GroupElement>& gens);

// Closure of a generator list under the group law.
std::vector<GroupElement> generate_elements(const std::vector<GroupElement>& gens, size_t nvars);

} // namespace qsing
