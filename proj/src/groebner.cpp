#include "qsing/groebner.hpp"

#include <algorithm>
#include <deque>

namespace qsing {

namespace {

using OrderedTerms = std::map<Monomial, Rational, TermOrder>;

OrderedTerms ordered(const Poly& p, const TermOrder& order) {
    OrderedTerms t(order);
    for (const auto& [m, c] : p.terms())
        t.emplace(m, c);
    return t;
}

Poly monic(const Poly& p, const TermOrder& order) {
    return p * (Rational(1) / p.leading_coefficient(order));
}

struct Lead {
    Monomial m;
    Rational c;
};

} // namespace

Poly normal_form(const Poly& f, const std::vector<Poly>& gb, const TermOrder& order) {
    std::vector<Lead> leads;
    leads.reserve(gb.size());
    for (const auto& g : gb)
        leads.push_back({g.leading_monomial(order), g.leading_coefficient(order)});

    OrderedTerms work = ordered(f, order);
    Poly remainder(f.nvars());
    while (!work.empty()) {
        auto top = std::prev(work.end());
        Monomial m = top->first;
        Rational c = top->second;
        size_t hit = gb.size();
        for (size_t i = 0; i < gb.size(); ++i)
            if (!gb[i].is_zero() && divides(leads[i].m, m)) {
                hit = i;
                break;
            }
        if (hit == gb.size()) {
            remainder.add_term(m, c);
            work.erase(top);
            continue;
        }
        Monomial shift = monomial_quotient(m, leads[hit].m);
        Rational factor = c / leads[hit].c;
        for (const auto& [gm, gc] : gb[hit].terms()) {
            Monomial target = monomial_product(gm, shift);
            auto it = work.find(target);
            Rational delta = -factor * gc;
            if (it == work.end()) {
                work.emplace(target, delta);
            } else {
                it->second += delta;
                if (sgn(it->second) == 0)
                    work.erase(it);
            }
        }
    }
    return remainder;
}

std::vector<Poly> groebner_basis(const std::vector<Poly>& generators, const TermOrder& order) {
    std::vector<Poly> basis;
    for (const auto& g : generators)
        if (!g.is_zero())
            basis.push_back(monic(g, order));
    if (basis.empty())
        return {};

    std::deque<std::pair<size_t, size_t>> pairs;
    for (size_t j = 1; j < basis.size(); ++j)
        for (size_t i = 0; i < j; ++i)
            pairs.emplace_back(i, j);

    while (!pairs.empty()) {
        auto [i, j] = pairs.front();
        pairs.pop_front();
        Monomial li = basis[i].leading_monomial(order);
        Monomial lj = basis[j].leading_monomial(order);
        Monomial l = monomial_lcm(li, lj);
        if (l == monomial_product(li, lj))
            continue;  // coprime leading monomials: S-polynomial reduces to zero
        Poly s = basis[i].shift(monomial_quotient(l, li)) - basis[j].shift(monomial_quotient(l, lj));
        Poly r = normal_form(s, basis, order);
        if (r.is_zero())
            continue;
        basis.push_back(monic(r, order));
        size_t k = basis.size() - 1;
        for (size_t a = 0; a < k; ++a)
            pairs.emplace_back(a, k);
    }

    // Minimize: drop elements whose leading monomial is divisible by another's.
    std::vector<Poly> minimal;
    for (size_t i = 0; i < basis.size(); ++i) {
        Monomial li = basis[i].leading_monomial(order);
        bool redundant = false;
        for (size_t j = 0; j < basis.size() && !redundant; ++j) {
            if (i == j)
                continue;
            Monomial lj = basis[j].leading_monomial(order);
            if (divides(lj, li) && (lj != li || j < i))
                redundant = true;
        }
        if (!redundant)
            minimal.push_back(basis[i]);
    }
    // Interreduce tails.
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i)
                others.push_back(minimal[j]);
        Monomial lm = minimal[i].leading_monomial(order);
        Poly tail = minimal[i] - Poly::monomial(lm, 1);
        minimal[i] = Poly::monomial(lm, 1) + normal_form(tail, others, order);
    }
    std::sort(minimal.begin(), minimal.end(), [&](const Poly& a, const Poly& b) {
        return order.less(a.leading_monomial(order), b.leading_monomial(order));
    });
    return minimal;
}

bool standard_monomials(const std::vector<Poly>& gb, size_t nvars, const TermOrder& order,
                        std::vector<Monomial>& out) {
    out.clear();
    std::vector<Monomial> leads;
    for (const auto& g : gb)
        leads.push_back(g.leading_monomial(order));
    for (const auto& l : leads)
        if (total_degree(l) == 0)
            return true;  // unit ideal: empty quotient
    std::vector<int> bound(nvars, -1);
    for (const auto& l : leads) {
        size_t support = 0, var = 0;
        for (size_t i = 0; i < nvars; ++i)
            if (l[i] > 0) {
                ++support;
                var = i;
            }
        if (support == 1 && (bound[var] < 0 || l[var] < bound[var]))
            bound[var] = l[var];
    }
    for (int b : bound)
        if (b < 0)
            return false;
    Monomial m(nvars, 0);
    while (true) {
        bool standard = true;
        for (const auto& l : leads)
            if (divides(l, m)) {
                standard = false;
                break;
            }
        if (standard)
            out.push_back(m);
        size_t i = 0;
        while (i < nvars) {
            if (m[i] + 1 < bound[i]) {
                ++m[i];
                break;
            }
            m[i] = 0;
            ++i;
        }
        if (i == nvars)
            break;
    }
    return true;
}

} // namespace qsing
