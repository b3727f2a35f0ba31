#include "qsing/statespace.hpp"
#include "qsing/error.hpp"

#include <algorithm>

namespace qsing {

long StateSpace::find_class(const GroupElement& g, const Monomial& m) const {
    if (!group.contains(g))
        return -1;
    size_t s = group.index_of(g);
    for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i].sector == s && basis[i].monomial == m)
            return static_cast<long>(i);
    return -1;
}

std::vector<size_t> StateSpace::classes_in_sector(size_t sector) const {
    std::vector<size_t> out;
    for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i].sector == sector)
            out.push_back(i);
    return out;
}

Sector build_sector(const QSingularity& s, const SymmetryGroup& G, const GroupElement& gamma) {
    if (!G.contains(gamma))
        fail("ElementNotInGroup", render_element(gamma) + " is not in G");
    Sector sec;
    sec.gamma = gamma;
    std::vector<Rational> q_fixed;
    sec.iota = 0;
    for (size_t i = 0; i < s.nvars(); ++i) {
        sec.iota += gamma[i] - s.q[i];
        if (sgn(gamma[i]) == 0) {
            sec.fixed_vars.push_back(i);
            q_fixed.push_back(s.q[i]);
        }
    }
    sec.N_gamma = sec.fixed_vars.size();
    sec.is_ramond = sec.N_gamma > 0;
    sec.W_gamma = s.W.restrict_to(sec.fixed_vars);
    sec.milnor = milnor_ring(sec.W_gamma, q_fixed);
    sec.deg_W = Rational(static_cast<long>(sec.N_gamma)) + 2 * sec.iota;
    sec.invariants = invariant_basis(sec, G);
    return sec;
}

std::vector<Monomial> invariant_basis(const Sector& sector, const SymmetryGroup& G) {
    std::vector<Monomial> out;
    for (const auto& m : sector.milnor.basis) {
        bool invariant = true;
        for (const auto& g : G.generators) {
            Rational phase = 0;
            for (size_t k = 0; k < sector.fixed_vars.size(); ++k)
                phase += (m[k] + 1) * g[sector.fixed_vars[k]];
            if (!is_integer(phase)) {
                invariant = false;
                break;
            }
        }
        if (invariant)
            out.push_back(m);
    }
    return out;
}

std::string class_label(const StateSpace& H, const Sector& sector, const Monomial& m) {
    std::string e = "e" + render_element(sector.gamma);
    if (!sector.is_ramond)
        return e;
    std::vector<std::string> names;
    for (size_t v : sector.fixed_vars)
        names.push_back(H.singularity.vars[v]);
    if (total_degree(m) == 0)
        return e;
    return render_monomial(m, names) + "*" + e;
}

StateSpace build_state_space(const QSingularity& s, const SymmetryGroup& G) {
    GroupElement J = exponential_grading_element(s);
    if (!G.contains(J))
        fail("MissingJ", "the group does not contain J");
    StateSpace H;
    H.singularity = s;
    H.group = G;
    for (const auto& g : G.elements)
        H.sectors.push_back(build_sector(s, G, g));
    for (size_t si = 0; si < H.sectors.size(); ++si) {
        const Sector& sec = H.sectors[si];
        for (const auto& m : sec.invariants) {
            H.basis.push_back({si, m, class_label(H, sec, m)});
            H.degrees.push_back(sec.deg_W);
        }
    }
    size_t n = H.basis.size();
    H.eta = zero_matrix(n, n);
    for (size_t i = 0; i < n; ++i) {
        const Sector& a = H.sectors[H.basis[i].sector];
        for (size_t j = 0; j < n; ++j) {
            const Sector& b = H.sectors[H.basis[j].sector];
            if (b.gamma != group_inverse(a.gamma))
                continue;
            if (!a.is_ramond)
                H.eta[i][j] = 1;
            else
                H.eta[i][j] = residue(a.milnor, Poly::monomial(monomial_product(H.basis[i].monomial,
                                                                                H.basis[j].monomial)));
        }
    }
    if (!invert(H.eta, H.eta_inv))
        invariant_violation("state-space pairing is degenerate");
    long unit = H.find_class(J, Monomial{});
    if (unit < 0)
        invariant_violation("no unit class in the J sector");
    H.unit = static_cast<size_t>(unit);
    return H;
}

StateSpace tensor_state_space(const StateSpace& H1, const StateSpace& H2) {
    const QSingularity& s1 = H1.singularity;
    const QSingularity& s2 = H2.singularity;
    for (const auto& v : s1.vars)
        if (std::find(s2.vars.begin(), s2.vars.end(), v) != s2.vars.end())
            fail("VariableCollision", "variable '" + v + "' occurs in both summands");
    size_t n1 = s1.nvars(), n2 = s2.nvars(), n = n1 + n2;
    std::vector<size_t> map1(n1), map2(n2);
    for (size_t i = 0; i < n1; ++i)
        map1[i] = i;
    for (size_t i = 0; i < n2; ++i)
        map2[i] = n1 + i;
    std::vector<std::string> vars = s1.vars;
    vars.insert(vars.end(), s2.vars.begin(), s2.vars.end());
    Poly W = s1.W.embed(n, map1) + s2.W.embed(n, map2);
    QSingularity s = check_nondegenerate(W, vars);

    auto concat = [](const GroupElement& a, const GroupElement& b) {
        GroupElement c = a;
        c.insert(c.end(), b.begin(), b.end());
        return c;
    };
    SymmetryGroup G;
    for (const auto& g : H1.group.generators)
        G.generators.push_back(concat(g, group_identity(n2)));
    for (const auto& g : H2.group.generators)
        G.generators.push_back(concat(group_identity(n1), g));
    G.elements = generate_elements(G.generators, n);
    G.contains_J = G.contains(exponential_grading_element(s));

    StateSpace H = build_state_space(s, G);
    H.tensor_factors.assign(H.dim(), {0, 0});
    for (size_t i = 0; i < H1.dim(); ++i)
        for (size_t j = 0; j < H2.dim(); ++j) {
            const Sector& a = H1.sectors[H1.basis[i].sector];
            const Sector& b = H2.sectors[H2.basis[j].sector];
            Monomial m = H1.basis[i].monomial;
            m.insert(m.end(), H2.basis[j].monomial.begin(), H2.basis[j].monomial.end());
            long k = H.find_class(concat(a.gamma, b.gamma), m);
            if (k < 0)
                invariant_violation("product class missing from the tensor state space");
            H.tensor_factors[k] = {i, j};
        }
    return H;
}

} // namespace qsing
