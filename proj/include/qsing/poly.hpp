#pragma once

#include "qsing/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qsing {

using Monomial = std::vector<int>;

int total_degree(const Monomial& m);
bool divides(const Monomial& a, const Monomial& b);
Monomial monomial_product(const Monomial& a, const Monomial& b);
Monomial monomial_quotient(const Monomial& b, const Monomial& a);  // b / a, requires a | b
Monomial monomial_lcm(const Monomial& a, const Monomial& b);

// Graded reverse lexicographic order, optionally refined by an integer weight vector
// (weighted degree first, grevlex to break ties).
class TermOrder {
public:
    static TermOrder grevlex() { return TermOrder({}); }
    static TermOrder weighted(std::vector<long> weights) { return TermOrder(std::move(weights)); }

    bool less(const Monomial& a, const Monomial& b) const;
    bool operator()(const Monomial& a, const Monomial& b) const { return less(a, b); }
    const std::vector<long>& weights() const { return weights_; }

private:
    explicit TermOrder(std::vector<long> w) : weights_(std::move(w)) {}
    std::vector<long> weights_;
};

using Term = std::pair<Monomial, Rational>;

class Poly {
public:
    Poly() = default;
    explicit Poly(size_t nvars) : nvars_(nvars) {}

    static Poly constant(size_t nvars, const Rational& c);
    static Poly variable(size_t nvars, size_t index);
    static Poly monomial(const Monomial& m, const Rational& c = 1);

    size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    Rational coeff(const Monomial& m) const;

    void add_term(const Monomial& m, const Rational& c);

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator-() const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rational& c) const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    bool operator==(const Poly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly pow(unsigned e) const;
    Poly derivative(size_t var) const;
    // Multiplies every exponent vector by the monomial m (shift).
    Poly shift(const Monomial& m) const;

    // Keeps only variables listed in 'kept' (others set to 0); result lives in |kept| variables.
    Poly restrict_to(const std::vector<size_t>& kept) const;
    // Re-embeds a polynomial in a larger variable set; variable i goes to slot map[i].
    Poly embed(size_t nvars, const std::vector<size_t>& map) const;

    // Substitutes polynomials (all in a common ring) for each variable.
    Poly substitute(const std::vector<Poly>& values) const;

    Monomial leading_monomial(const TermOrder& order) const;
    Rational leading_coefficient(const TermOrder& order) const;
    std::vector<Term> sorted_terms(const TermOrder& order) const;  // descending

    int degree() const;  // total degree, -1 for zero
    // Weighted degree of each term; returns true when all terms share one degree.
    bool is_weighted_homogeneous(const std::vector<Rational>& weights, Rational& degree) const;

private:
    size_t nvars_ = 0;
    std::map<Monomial, Rational> terms_;
};

Poly operator*(const Rational& c, const Poly& p);

Rational weighted_degree(const Monomial& m, const std::vector<Rational>& weights);

std::string render_monomial(const Monomial& m, const std::vector<std::string>& vars);
// Canonical text: descending term order, "0" for zero, reduced "p/q" coefficients.
std::string render(const Poly& p, const std::vector<std::string>& vars,
                   const TermOrder& order = TermOrder::grevlex());

struct ParsedPoly {
    Poly poly;
    std::vector<std::string> vars;
};

// Grammar: expr := term (("+"|"-") term)*; term := coeff ("*" factor)* | factor ("*" factor)*;
// factor := ident ("^" uint)?; coeff := int | int "/" uint. A leading sign is accepted.
ParsedPoly parse_polynomial(const std::string& text,
                            const std::optional<std::vector<std::string>>& vars = std::nullopt);

} // namespace qsing
