#pragma once

#include "qsing/correlator.hpp"
#include "qsing/statespace.hpp"

#include <doctest.h>

namespace qsing::test {

inline Rational Q(long p, long q = 1) { return Rational(p) / q; }

inline Poly P(const std::string& text, const std::vector<std::string>& vars) {
    return parse_polynomial(text, vars).poly;
}

// Basis index of the NS class generator^k (or the class x^m in that sector).
inline size_t class_of(const StateSpace& H, const GroupElement& generator, long k, Monomial m = {}) {
    long idx = H.find_class(group_power(generator, k), m);
    REQUIRE(idx >= 0);
    return static_cast<size_t>(idx);
}

inline StateSpace state_space_J(const std::string& poly) {
    QSingularity s = singularity_from_text(poly);
    SymmetryGroup G = subgroup_from_generators(s, max_diagonal_group(s), {exponential_grading_element(s)});
    return build_state_space(s, G);
}

inline StateSpace state_space_max(const std::string& poly) {
    QSingularity s = singularity_from_text(poly);
    return build_state_space(s, max_diagonal_group(s));
}

// f lies in the ideal of gens: solve f = sum a_i g_i with multipliers of total degree <= bound.
bool in_ideal_oracle(const Poly& f, const std::vector<Poly>& gens, int bound);

} // namespace qsing::test
