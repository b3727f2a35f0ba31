#include "helpers.hpp"

#include <map>

namespace qsing::test {

namespace {

void monomials_up_to(size_t nvars, int bound, Monomial& cur, size_t var, std::vector<Monomial>& out) {
    if (var == nvars) {
        out.push_back(cur);
        return;
    }
    int used = total_degree(cur);
    for (int e = 0; used + e <= bound; ++e) {
        cur[var] = e;
        monomials_up_to(nvars, bound, cur, var + 1, out);
    }
    cur[var] = 0;
}

} // namespace

bool in_ideal_oracle(const Poly& f, const std::vector<Poly>& gens, int bound) {
    size_t nv = f.nvars();
    std::vector<Monomial> mults;
    Monomial cur(nv, 0);
    monomials_up_to(nv, bound, cur, 0, mults);
    // Columns: m * g_i; rows: monomials appearing anywhere.
    std::vector<Poly> cols;
    for (const auto& g : gens)
        for (const auto& m : mults)
            cols.push_back(g.shift(m));
    std::map<Monomial, size_t> row;
    auto row_of = [&](const Monomial& m) {
        auto it = row.find(m);
        if (it == row.end())
            it = row.emplace(m, row.size()).first;
        return it->second;
    };
    for (const auto& c : cols)
        for (const auto& [m, v] : c.terms())
            row_of(m);
    for (const auto& [m, v] : f.terms())
        row_of(m);
    Matrix A = zero_matrix(row.size(), cols.size());
    Vector b(row.size(), Rational(0));
    for (size_t j = 0; j < cols.size(); ++j)
        for (const auto& [m, v] : cols[j].terms())
            A[row[m]][j] = v;
    for (const auto& [m, v] : f.terms())
        b[row[m]] = v;
    Vector x;
    bool unique = false;
    return solve_linear(A, b, x, unique);
}

} // namespace qsing::test
