#pragma once

#include "qsing/poly.hpp"

#include <vector>

namespace qsing {

// Reduced, monic Groebner basis (Buchberger with the coprime-leading-term criterion).
std::vector<Poly> groebner_basis(const std::vector<Poly>& generators,
                                 const TermOrder& order = TermOrder::grevlex());

// Full reduction of f modulo gb; the unique remainder when gb is a Groebner basis for 'order'.
Poly normal_form(const Poly& f, const std::vector<Poly>& gb,
                 const TermOrder& order = TermOrder::grevlex());

// Standard monomials (not divisible by any leading monomial) when the quotient is finite.
// Returns false when some variable has no pure-power leading monomial.
bool standard_monomials(const std::vector<Poly>& gb, size_t nvars, const TermOrder& order,
                        std::vector<Monomial>& out);

} // namespace qsing
