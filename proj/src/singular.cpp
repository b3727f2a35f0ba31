#include "qsing/singular.hpp"
#include "qsing/error.hpp"
#include "qsing/groebner.hpp"

#include <algorithm>
#include <set>

namespace qsing {

IntMatrix exponent_matrix(const Poly& W) {
    IntMatrix B;
    for (const auto& [m, c] : W.terms()) {
        std::vector<Integer> row;
        for (int e : m)
            row.emplace_back(e);
        B.push_back(row);
    }
    return B;
}

Weights compute_weights(const Poly& W) {
    size_t N = W.nvars();
    if (W.is_zero() || N == 0)
        fail("NonUniqueWeights", "polynomial has no variables");
    IntMatrix B = exponent_matrix(W);
    for (size_t j = 0; j < N; ++j) {
        bool occurs = false;
        for (const auto& row : B)
            if (row[j] != 0)
                occurs = true;
        if (!occurs)
            fail("NonUniqueWeights", "variable " + std::to_string(j) + " does not occur");
    }
    Matrix A = zero_matrix(B.size(), N);
    for (size_t i = 0; i < B.size(); ++i)
        for (size_t j = 0; j < N; ++j)
            A[i][j] = Rational(B[i][j]);
    if (rank(A) < N)
        fail("NonUniqueWeights", "exponent matrix has rank below the variable count");
    Vector ones(B.size(), Rational(1)), q;
    bool unique = false;
    if (!solve_linear(A, ones, q, unique))
        fail("NoPositiveSolution", "no weights satisfy the quasi-homogeneity equations");
    for (const auto& qi : q)
        if (sgn(qi) <= 0)
            fail("NoPositiveSolution", "quasi-homogeneity forces a non-positive weight");
    Weights w;
    w.q = q;
    Integer d = 1;
    for (const auto& qi : q)
        mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), qi.get_den_mpz_t());
    w.d = d.get_si();
    for (const auto& qi : q) {
        Rational scaled = qi * Rational(d);
        w.n.push_back(scaled.get_num().get_si());
    }
    return w;
}

QSingularity check_nondegenerate(const Poly& W, const std::vector<std::string>& vars) {
    Weights w = compute_weights(W);
    QSingularity s;
    s.W = W;
    s.vars = vars;
    s.B = exponent_matrix(W);
    s.q = w.q;
    s.d = w.d;
    s.n = w.n;
    size_t N = W.nvars();
    for (const auto& qi : s.q)
        if (qi >= 1)
            fail("NonIsolatedSingularity", "weight >= 1: the origin is not a critical point");
    std::vector<Poly> partials;
    for (size_t i = 0; i < N; ++i)
        partials.push_back(W.derivative(i));
    s.jacobian_gb = groebner_basis(partials);
    std::vector<Monomial> basis;
    if (!standard_monomials(s.jacobian_gb, N, TermOrder::grevlex(), basis))
        fail("NonIsolatedSingularity", "Jacobian ideal is not zero-dimensional");
    if (basis.empty())
        fail("NonIsolatedSingularity", "Jacobian ideal is the unit ideal");
    s.mu = static_cast<long>(basis.size());
    Rational expected = 1;
    s.c_hat = 0;
    for (const auto& qi : s.q) {
        expected *= Rational(1) / qi - 1;
        s.c_hat += 1 - 2 * qi;
    }
    if (expected != Rational(s.mu))
        invariant_violation("Milnor number " + std::to_string(s.mu) + " differs from prod(1/q_i - 1) = " +
                            to_string(expected));
    return s;
}

QSingularity singularity_from_text(const std::string& text,
                                   const std::optional<std::vector<std::string>>& vars) {
    ParsedPoly p = parse_polynomial(text, vars);
    return check_nondegenerate(p.poly, p.vars);
}

GroupElement group_identity(size_t n) {
    return GroupElement(n, Rational(0));
}

GroupElement group_add(const GroupElement& a, const GroupElement& b) {
    GroupElement c(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        c[i] = frac(a[i] + b[i]);
    return c;
}

GroupElement group_inverse(const GroupElement& a) {
    GroupElement c(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        c[i] = frac(-a[i]);
    return c;
}

GroupElement group_power(const GroupElement& a, long k) {
    GroupElement c(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        c[i] = frac(a[i] * k);
    return c;
}

long element_order(const GroupElement& a) {
    Integer l = 1;
    for (const auto& t : a)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.get_den_mpz_t());
    return l.get_si();
}

bool is_symmetry(const QSingularity& s, const GroupElement& g) {
    for (const auto& row : s.B) {
        Rational sum = 0;
        for (size_t j = 0; j < g.size(); ++j)
            sum += Rational(row[j]) * g[j];
        if (!is_integer(sum))
            return false;
    }
    return true;
}

std::string render_element(const GroupElement& g) {
    std::string out = "(";
    for (size_t i = 0; i < g.size(); ++i) {
        if (i)
            out += ",";
        out += to_string(g[i]);
    }
    return out + ")";
}

bool SymmetryGroup::contains(const GroupElement& g) const {
    return std::binary_search(elements.begin(), elements.end(), g);
}

size_t SymmetryGroup::index_of(const GroupElement& g) const {
    auto it = std::lower_bound(elements.begin(), elements.end(), g);
    if (it == elements.end() || *it != g)
        fail("ElementNotInGroup", render_element(g) + " is not in the group");
    return static_cast<size_t>(it - elements.begin());
}

std::vector<GroupElement> generate_elements(const std::vector<GroupElement>& gens, size_t nvars) {
    std::set<GroupElement> seen{group_identity(nvars)};
    std::vector<GroupElement> frontier{group_identity(nvars)};
    while (!frontier.empty()) {
        std::vector<GroupElement> next;
        for (const auto& e : frontier)
            for (const auto& g : gens) {
                GroupElement h = group_add(e, g);
                if (seen.insert(h).second)
                    next.push_back(h);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

SymmetryGroup max_diagonal_group(const QSingularity& s) {
    size_t N = s.nvars();
    SmithForm snf = smith_normal_form(s.B);
    Matrix Qr = zero_matrix(N, N);
    for (size_t i = 0; i < N; ++i)
        for (size_t j = 0; j < N; ++j)
            Qr[i][j] = Rational(snf.Q[i][j]);
    Matrix Qinv;
    if (!invert(Qr, Qinv))
        invariant_violation("Smith form factor Q is singular");
    SymmetryGroup G;
    for (size_t l = 0; l < N; ++l) {
        Integer t = snf.T[l][l];
        if (t == 0)
            invariant_violation("exponent matrix is not of full column rank");
        if (t == 1)
            continue;
        GroupElement g(N);
        for (size_t i = 0; i < N; ++i)
            g[i] = frac(Qinv[i][l] / Rational(t));
        G.generators.push_back(g);
    }
    G.elements = generate_elements(G.generators, N);
    G.contains_J = G.contains(exponential_grading_element(s));
    return G;
}

GroupElement exponential_grading_element(const QSingularity& s) {
    GroupElement J(s.nvars());
    for (size_t i = 0; i < s.nvars(); ++i)
        J[i] = frac(s.q[i]);
    return J;
}

SymmetryGroup subgroup_from_generators(const QSingularity& s, const SymmetryGroup& G_W,
                                       const std::vector<GroupElement>& gens) {
    SymmetryGroup G;
    for (const auto& g : gens) {
        GroupElement canon(g.size());
        for (size_t i = 0; i < g.size(); ++i)
            canon[i] = frac(g[i]);
        if (canon.size() != s.nvars() || !G_W.contains(canon))
            fail("ElementNotInGroup", render_element(canon) + " is not a symmetry of W");
        if (std::find(G.generators.begin(), G.generators.end(), canon) == G.generators.end())
            G.generators.push_back(canon);
    }
    G.elements = generate_elements(G.generators, s.nvars());
    G.contains_J = G.contains(exponential_grading_element(s));
    if (!G.contains_J)
        fail("MissingJ", "the generated subgroup does not contain J");
    return G;
}

} // namespace qsing
