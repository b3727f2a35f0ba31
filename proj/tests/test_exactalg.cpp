#include "helpers.hpp"

#include "qsing/error.hpp"
#include "qsing/groebner.hpp"
#include "qsing/snf.hpp"

#include <numeric>
#include <random>

using namespace qsing;
using namespace qsing::test;

namespace {

template <class F>
std::string error_kind(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

// gcd of all k x k minors, the k-th determinantal divisor.
Integer minor_gcd(const IntMatrix& B, size_t k) {
    size_t s = B.size(), n = B[0].size();
    Integer g = 0;
    std::vector<size_t> rows(k), cols(k);
    std::vector<bool> rsel(s, false), csel(n, false);
    std::fill(rsel.begin(), rsel.begin() + k, true);
    do {
        std::fill(csel.begin(), csel.end(), false);
        std::fill(csel.begin(), csel.begin() + k, true);
        do {
            IntMatrix m;
            for (size_t i = 0; i < s; ++i) {
                if (!rsel[i])
                    continue;
                std::vector<Integer> row;
                for (size_t j = 0; j < n; ++j)
                    if (csel[j])
                        row.push_back(B[i][j]);
                m.push_back(row);
            }
            Integer d = int_determinant(m);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
        } while (std::prev_permutation(csel.begin(), csel.end()));
    } while (std::prev_permutation(rsel.begin(), rsel.end()));
    return g;
}

// Invariant factors from determinantal divisors: t_k = d_k / d_{k-1}.
std::vector<Integer> invariant_factors(const IntMatrix& B) {
    std::vector<Integer> out;
    Integer prev = 1;
    size_t r = std::min(B.size(), B[0].size());
    for (size_t k = 1; k <= r; ++k) {
        Integer d = minor_gcd(B, k);
        if (d == 0)
            break;
        out.push_back(d / prev);
        prev = d;
    }
    return out;
}

void check_smith(const IntMatrix& B) {
    SmithForm f = smith_normal_form(B);
    CHECK(int_multiply(int_multiply(f.V, f.T), f.Q) == B);
    Integer dv = int_determinant(f.V), dq = int_determinant(f.Q);
    CHECK(abs(dv) == 1);
    CHECK(abs(dq) == 1);
    std::vector<Integer> diag;
    for (size_t i = 0; i < f.T.size(); ++i)
        for (size_t j = 0; j < f.T[i].size(); ++j) {
            if (i != j)
                CHECK(f.T[i][j] == 0);
            else if (f.T[i][i] != 0)
                diag.push_back(abs(f.T[i][i]));
        }
    for (size_t i = 1; i < diag.size(); ++i)
        CHECK(diag[i] % diag[i - 1] == 0);
    CHECK(diag == invariant_factors(B));
}

} // namespace

TEST_CASE("rationals are canonical") {
    Rational r = Q(6, 8);
    CHECK(to_string(r) == "3/4");
    CHECK(to_string(Q(-4, 2)) == "-2");
    CHECK(parse_rational("-10/4") == Q(-5, 2));
    CHECK(to_string(parse_rational("7")) == "7");
    CHECK(error_kind([] { parse_rational("1/0"); }) != "");
    CHECK(frac(Q(-1, 3)) == Q(2, 3));
    CHECK(floor_of(Q(-1, 3)) == -1);
}

TEST_CASE("parse_polynomial examples") {
    ParsedPoly p = parse_polynomial("x^3 + x*y^3");
    REQUIRE(p.vars == std::vector<std::string>{"x", "y"});
    CHECK(p.poly.size() == 2);
    CHECK(p.poly.coeff({3, 0}) == 1);
    CHECK(p.poly.coeff({1, 3}) == 1);

    ParsedPoly single = parse_polynomial("x^2");
    CHECK(single.poly.size() == 1);
    CHECK(single.poly.coeff({2}) == 1);

    CHECK(parse_polynomial("2*x - 2*x").poly.is_zero());
    CHECK(render(parse_polynomial("2*x - 2*x").poly, {"x"}) == "0");
    CHECK(parse_polynomial("1/2*x*y - 3/4").poly.coeff({0, 0}) == Q(-3, 4));
}

TEST_CASE("parse_polynomial errors") {
    CHECK(error_kind([] { parse_polynomial("x^"); }) == "ParseError");
    CHECK(error_kind([] { parse_polynomial("x + * y"); }) == "ParseError");
    CHECK(error_kind([] { parse_polynomial("x^-2"); }) == "NegativeExponent");
    CHECK(error_kind([] { parse_polynomial("x + z", std::vector<std::string>{"x", "y"}); }) == "UnknownVariable");
}

TEST_CASE("render and parse round trip") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> coef(-9, 9), den(1, 5), ex(0, 4);
    std::vector<std::string> vars = {"x", "y", "z"};
    for (int trial = 0; trial < 100; ++trial) {
        Poly p(3);
        for (int t = 0; t < 6; ++t)
            p.add_term({ex(rng), ex(rng), ex(rng)}, Rational(coef(rng)) / den(rng));
        std::string text = render(p, vars);
        CHECK(parse_polynomial(text, vars).poly == p);
    }
}

TEST_CASE("smith normal form examples and determinantal-divisor oracle") {
    IntMatrix I = int_identity(3);
    SmithForm f = smith_normal_form(I);
    CHECK(f.T == I);
    CHECK(f.V == I);
    CHECK(f.Q == I);

    for (long n = 2; n <= 12; ++n) {
        IntMatrix D = {{n, 0}, {1, 2}};
        SmithForm g = smith_normal_form(D);
        CHECK(abs(g.T[0][0]) == 1);
        CHECK(abs(g.T[1][1]) == 2 * n);
        check_smith(D);
    }
    IntMatrix E7 = {{3, 0}, {1, 3}};
    SmithForm e = smith_normal_form(E7);
    CHECK(abs(e.T[0][0]) == 1);
    CHECK(abs(e.T[1][1]) == 9);

    std::mt19937 rng(11);
    std::uniform_int_distribution<int> ent(-6, 6), dim(1, 4);
    for (int trial = 0; trial < 60; ++trial) {
        size_t s = dim(rng), n = dim(rng);
        IntMatrix B(s, std::vector<Integer>(n));
        bool nonzero = false;
        for (auto& row : B)
            for (auto& v : row) {
                v = ent(rng);
                nonzero = nonzero || v != 0;
            }
        if (!nonzero)
            continue;
        check_smith(B);
    }
}

TEST_CASE("groebner basis examples") {
    std::vector<std::string> x = {"x"};
    std::vector<Poly> g = groebner_basis({P("x^2", x)});
    REQUIRE(g.size() == 1);
    CHECK(g[0] == P("x^2", x));
    CHECK(groebner_basis({}).empty());

    for (int n = 1; n <= 6; ++n) {
        std::vector<Poly> a = groebner_basis({P(std::to_string(n + 1) + "*x^" + std::to_string(n), x)});
        REQUIRE(a.size() == 1);
        CHECK(a[0] == P("x^" + std::to_string(n), x));
    }
}

TEST_CASE("groebner quotient dimension of Jac(E7) against a count oracle") {
    std::vector<std::string> v = {"x", "y"};
    std::vector<Poly> jac = {P("3*x^2+y^3", v), P("3*x*y^2", v)};
    std::vector<Poly> gb = groebner_basis(jac);
    std::vector<Monomial> std_monos;
    REQUIRE(standard_monomials(gb, 2, TermOrder::grevlex(), std_monos));
    CHECK(std_monos.size() == 7);
    // Oracle: a monomial is standard iff no leading term divides it, counted on a box.
    size_t count = 0;
    for (int a = 0; a < 12; ++a)
        for (int b = 0; b < 12; ++b) {
            bool standard = true;
            for (const auto& p : gb)
                if (divides(p.leading_monomial(TermOrder::grevlex()), {a, b}))
                    standard = false;
            count += standard;
        }
    CHECK(count == 7);
    // Every generator of the ideal lies in the span of the basis ideal and vice versa.
    for (const auto& p : gb)
        CHECK(in_ideal_oracle(p, jac, 3));
}

TEST_CASE("normal_form examples and linear-algebra oracle") {
    std::vector<std::string> v = {"x", "y"};
    std::vector<Poly> jac = {P("3*x^2+y^3", v), P("3*x*y^2", v)};
    std::vector<Poly> gb = groebner_basis(jac);
    CHECK(normal_form(P("3*x^2+y^3", v), gb).is_zero());
    CHECK(normal_form(P("1", v), gb) == P("1", v));

    Poly y4 = P("y^4", v);
    Poly nf = normal_form(y4, gb);
    REQUIRE(nf.size() == 1);
    Monomial m = nf.terms().begin()->first;
    CHECK(weighted_degree(m, {Q(1, 3), Q(2, 9)}) == Q(8, 9));  // top weighted degree
    CHECK(in_ideal_oracle(y4 - nf, jac, 4));
}

TEST_CASE("normal_form is linear, idempotent and kills the ideal") {
    std::vector<std::string> v = {"x", "y"};
    std::vector<Poly> jac = {P("5*x^4+y^2", v), P("2*x*y", v)};
    std::vector<Poly> gb = groebner_basis(jac);
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> coef(-5, 5), ex(0, 6);
    for (int trial = 0; trial < 40; ++trial) {
        Poly f(2), g(2), a(2), b(2);
        for (int t = 0; t < 4; ++t) {
            f.add_term({ex(rng), ex(rng)}, coef(rng));
            g.add_term({ex(rng), ex(rng)}, coef(rng));
            a.add_term({ex(rng), ex(rng)}, coef(rng));
            b.add_term({ex(rng), ex(rng)}, coef(rng));
        }
        CHECK(normal_form(f + g, gb) == normal_form(f, gb) + normal_form(g, gb));
        CHECK(normal_form(normal_form(f, gb), gb) == normal_form(f, gb));
        CHECK(normal_form(a * jac[0] + b * jac[1], gb).is_zero());
    }
}
