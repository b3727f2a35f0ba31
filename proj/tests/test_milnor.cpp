#include "helpers.hpp"

#include "qsing/milnor.hpp"

#include <map>
#include <set>

using namespace qsing;
using namespace qsing::test;

namespace {

MilnorRing ring_of(const std::string& poly) { return milnor_basis(singularity_from_text(poly)); }

Monomial mono(std::initializer_list<int> e) { return Monomial(e); }

} // namespace

TEST_CASE("milnor_basis examples") {
    MilnorRing e7 = ring_of("x^3+x*y^3");
    CHECK(e7.mu == 7);
    std::set<Monomial> want = {mono({0, 0}), mono({1, 0}), mono({2, 0}), mono({0, 1}),
                               mono({0, 2}), mono({1, 1}), mono({2, 1})};
    CHECK(std::set<Monomial>(e7.basis.begin(), e7.basis.end()) == want);
    CHECK(e7.socle == mono({2, 1}));

    for (int n = 1; n <= 8; ++n) {
        MilnorRing a = ring_of("x^" + std::to_string(n + 1));
        REQUIRE(a.mu == n);
        for (int i = 0; i < n; ++i)
            CHECK(a.basis[i] == mono({i}));
    }
    for (int n = 2; n <= 8; ++n) {
        MilnorRing d = ring_of("x^" + std::to_string(n) + "+x*y^2");
        CHECK(d.mu == n + 1);
        // {1, x, ..., x^(n-1), y} is a basis of the quotient.
        Matrix coords;
        for (int i = 0; i < n; ++i)
            coords.push_back(basis_coordinates(d, Poly::monomial(mono({i, 0}))));
        coords.push_back(basis_coordinates(d, Poly::monomial(mono({0, 1}))));
        CHECK(rank(coords) == size_t(n + 1));
    }
}

TEST_CASE("hessian_class examples") {
    MilnorRing e7 = ring_of("x^3+x*y^3");
    Poly h = hessian_class(e7);
    REQUIRE(h.size() == 1);
    CHECK(h.terms().begin()->first == mono({2, 1}));
    CHECK(residue(e7, hessian_determinant(e7.W)) == 7);

    for (int n = 1; n <= 8; ++n) {
        MilnorRing a = ring_of("x^" + std::to_string(n + 1));
        CHECK(hessian_class(a) == Poly::monomial(mono({n - 1}), Rational(n * (n + 1))));
    }
    for (int n = 2; n <= 8; ++n) {
        MilnorRing d = ring_of("x^" + std::to_string(n) + "+x*y^2");
        CHECK(hessian_class(d) == reduce(d, Poly::monomial(mono({n - 1, 0}), Rational(2 * n * (n + 1)))));
    }
}

TEST_CASE("residue examples") {
    MilnorRing e7 = ring_of("x^3+x*y^3");
    CHECK(residue(e7, Poly::monomial(mono({0, 4}))) == Q(-1, 3));
    CHECK(residue(e7, Poly::monomial(mono({0, 0}))) == 0);
    for (int n = 2; n <= 9; ++n) {
        MilnorRing d = ring_of("x^" + std::to_string(n) + "+x*y^2");
        CHECK(residue(d, Poly::monomial(mono({n - 1, 0}))) == Q(1, 2 * n));
        CHECK(residue_pairing(d, Poly::monomial(mono({0, 1})), Poly::monomial(mono({0, 1}))) == Q(-1, 2));
        if (n % 2 == 1)
            CHECK(residue_pairing(d, Poly::monomial(mono({(n - 1) / 2, 0})), Poly::monomial(mono({0, 1}))) == 0);
        CHECK(residue_pairing(d, Poly::monomial(mono({0, 0})), Poly::monomial(d.socle)) ==
              residue(d, Poly::monomial(d.socle)));
    }
}

TEST_CASE("residue properties over several rings") {
    for (const char* poly : {"x^3+x*y^3", "x^3+y^4", "x^3+y^5", "x^5+x*y^2", "x^4*y+y^2", "x^2+y^3+z^4", "x^7"}) {
        MilnorRing r = ring_of(poly);
        CAPTURE(poly);
        // Res(Hess) = mu.
        CHECK(residue(r, hessian_determinant(r.W)) == r.mu);
        // Nonsingular Gram matrix.
        Matrix g = residue_gram(r);
        Matrix inv;
        CHECK(invert(g, inv));
        // Supported in weighted degree c_hat only.
        int top = 0;
        for (const auto& m : r.basis)
            if (weighted_degree(m, r.q) == r.c_hat)
                ++top;
        CHECK(top == 1);
        for (const auto& m : r.basis)
            if (weighted_degree(m, r.q) != r.c_hat)
                CHECK(residue(r, Poly::monomial(m)) == 0);
        // Gram entries vanish off complementary degrees.
        for (size_t i = 0; i < r.basis.size(); ++i)
            for (size_t j = 0; j < r.basis.size(); ++j)
                if (weighted_degree(r.basis[i], r.q) + weighted_degree(r.basis[j], r.q) != r.c_hat)
                    CHECK(g[i][j] == 0);
    }
}

TEST_CASE("graded dimensions match the Poincare series") {
    // prod_i (1 - t^(1-q_i)) / (1 - t^(q_i)) expanded as a series in t^(1/d).
    for (const char* poly : {"x^3+x*y^3", "x^3+y^4", "x^3+y^5", "x^6+x*y^2", "x^5*y+y^2", "x^2+y^3+z^4"}) {
        QSingularity s = singularity_from_text(poly);
        MilnorRing r = milnor_basis(s);
        long d = s.d;
        std::map<long, Rational> series = {{0, 1}};
        long cap = 4 * d;
        for (size_t i = 0; i < s.nvars(); ++i) {
            long a = s.n[i], b = d - s.n[i];
            std::map<long, Rational> next;
            // multiply by (1 - t^b) / (1 - t^a) = (1 - t^b) * sum_k t^(a k)
            for (const auto& [e, c] : series)
                for (long k = 0; e + a * k <= cap; ++k) {
                    next[e + a * k] += c;
                    if (e + a * k + b <= cap)
                        next[e + a * k + b] -= c;
                }
            series = next;
        }
        std::map<long, Rational> counted;
        for (const auto& m : r.basis)
            counted[Rational(weighted_degree(m, s.q) * d).get_num().get_si()] += 1;
        for (const auto& [e, c] : series)
            if (c != 0)
                CHECK(counted[e] == c);
        for (const auto& [e, c] : counted)
            CHECK(series[e] == c);
    }
}
