#include "qsing/correlator.hpp"
#include "qsing/error.hpp"

#include <algorithm>
#include <numeric>

namespace qsing {

long MonomialPresentation::index_of(const Monomial& m) const {
    auto it = std::find(exponents.begin(), exponents.end(), m);
    return it == exponents.end() ? -1 : static_cast<long>(it - exponents.begin());
}

namespace {

using Sparse = std::vector<std::pair<size_t, Rational>>;

Sparse sparse(const Vector& v) {
    Sparse out;
    for (size_t i = 0; i < v.size(); ++i)
        if (sgn(v[i]) != 0)
            out.emplace_back(i, v[i]);
    return out;
}

uint64_t splitmix(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::string key_text(const FrobeniusAlgebra& alg, const std::vector<size_t>& key) {
    std::string out = "<";
    for (size_t i = 0; i < key.size(); ++i)
        out += (i ? "," : "") + alg.labels[key[i]];
    return out + ">";
}

} // namespace

WdvvEngine::WdvvEngine(FrobeniusAlgebra alg, MonomialPresentation presentation, CorrelatorTable basics,
                       std::optional<uint64_t> seed)
    : alg_(std::move(alg)), pres_(std::move(presentation)), basics_(std::move(basics)), seed_(seed) {
    size_t n = alg_.dim();
    if (pres_.exponents.size() != n)
        fail("DimensionMismatch", "monomial presentation does not cover the basis");
    if (seed_)
        rng_state_ = *seed_;
    products_.assign(n, std::vector<Sparse>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            products_[i][j] = sparse(alg_.basis_product(i, j));
    dual_.resize(n);
    for (size_t i = 0; i < n; ++i)
        dual_[i] = sparse(alg_.eta_inv[i]);
    // Every non-primitive basis element must factor exactly as generator * basis element.
    for (size_t i = 0; i < n; ++i) {
        const Monomial& m = pres_.exponents[i];
        if (total_degree(m) < 2)
            continue;
        for (size_t v = 0; v < m.size(); ++v) {
            if (m[v] == 0)
                continue;
            Monomial gen(m.size(), 0), rest = m;
            gen[v] = 1;
            rest[v] -= 1;
            long g = pres_.index_of(gen), r = pres_.index_of(rest);
            if (g < 0 || r < 0)
                invariant_violation("monomial basis is not closed under division");
            Sparse p = products_[g][r];
            if (p.size() != 1 || p[0].first != i || p[0].second != 1)
                invariant_violation("basis element " + alg_.labels[i] + " is not the product of its factors");
        }
    }
}

Rational WdvvEngine::correlator(std::vector<size_t> key) {
    if (key.size() < 3)
        fail("InvalidKey", "genus-zero correlators need at least three insertions");
    std::sort(key.begin(), key.end());
    if (key.size() == 3)
        return alg_.c3(key[0], key[1], key[2]);
    auto it = memo_.find(key);
    if (it != memo_.end())
        return it->second;
    Rational v = reconstruct(key);
    memo_.emplace(key, v);
    return v;
}

Rational WdvvEngine::reconstruct(const std::vector<size_t>& key) {
    for (size_t i : key)
        if (pres_.is_unit(i))
            return 0;
    Rational degree = 0;
    for (size_t i : key)
        degree += alg_.degrees[i];
    if (degree != alg_.dimension_target(key.size()))
        return 0;
    std::vector<size_t> nonprimitive;
    for (size_t pos = 0; pos < key.size(); ++pos)
        if (!pres_.is_primitive(key[pos]))
            nonprimitive.push_back(pos);
    if (nonprimitive.size() <= 2) {
        if (auto hit = basics_.get(0, key))
            return hit->value;
        fail("MissingBasic", "basic correlator " + key_text(alg_, key) + " is not supplied");
    }
    auto pick = [&](size_t count) -> size_t {
        return seed_ ? static_cast<size_t>(splitmix(rng_state_) % count) : 0;
    };
    // gamma_k: a non-primitive insertion of minimal degree.
    Rational min_degree = alg_.degrees[key[nonprimitive[0]]];
    for (size_t pos : nonprimitive)
        min_degree = std::min(min_degree, alg_.degrees[key[pos]]);
    std::vector<size_t> lowest;
    for (size_t pos : nonprimitive)
        if (alg_.degrees[key[pos]] == min_degree)
            lowest.push_back(pos);
    size_t k_pos = lowest[pick(lowest.size())];
    std::vector<size_t> others;
    for (size_t pos : nonprimitive)
        if (pos != k_pos)
            others.push_back(pos);
    size_t a_idx = pick(others.size());
    size_t alpha_pos = others[a_idx];
    others.erase(others.begin() + static_cast<long>(a_idx));
    size_t beta_pos = others[pick(others.size())];

    const Monomial& m = pres_.exponents[key[k_pos]];
    std::vector<size_t> vars;
    for (size_t v = 0; v < m.size(); ++v)
        if (m[v] > 0)
            vars.push_back(v);
    size_t v = vars[pick(vars.size())];
    Monomial gen(m.size(), 0), rest = m;
    gen[v] = 1;
    rest[v] -= 1;
    size_t eps = static_cast<size_t>(pres_.index_of(gen));
    size_t phi = static_cast<size_t>(pres_.index_of(rest));

    std::vector<size_t> gamma;
    for (size_t pos = 0; pos < key.size(); ++pos)
        if (pos != k_pos && pos != alpha_pos && pos != beta_pos)
            gamma.push_back(key[pos]);
    return evaluate_terms(gamma, key[alpha_pos], key[beta_pos], eps, phi);
}

// <Gamma, alpha, beta, eps*phi> = sum_{I,J} <Gamma_I, alpha, eps, d><d', phi, beta, Gamma_J>
//                               - sum_{J nonempty} <Gamma_I, alpha, beta, d><d', phi, eps, Gamma_J>.
Rational WdvvEngine::evaluate_terms(const std::vector<size_t>& gamma, size_t alpha, size_t beta, size_t eps,
                                    size_t phi) {
    size_t n = alg_.dim();
    auto contract = [&](std::vector<size_t> left, std::vector<size_t> right) -> Rational {
        if (left.size() > right.size())
            std::swap(left, right);
        Rational left_degree = 0;
        for (size_t i : left)
            left_degree += alg_.degrees[i];
        Rational needed = alg_.dimension_target(left.size() + 1) - left_degree;
        Vector dual(n, Rational(0));
        bool any = false;
        for (size_t l = 0; l < n; ++l) {
            if (alg_.degrees[l] != needed)
                continue;
            std::vector<size_t> k = left;
            k.push_back(l);
            Rational v = correlator(k);
            if (sgn(v) == 0)
                continue;
            for (const auto& [m, w] : dual_[l])
                dual[m] += v * w;
            any = true;
        }
        if (!any)
            return Rational(0);
        Rational total = 0;
        for (size_t m = 0; m < n; ++m) {
            if (sgn(dual[m]) == 0)
                continue;
            std::vector<size_t> k = right;
            k.push_back(m);
            total += dual[m] * correlator(k);
        }
        return total;
    };

    size_t g = gamma.size();
    Rational total = 0;
    for (size_t mask = 0; mask < (size_t(1) << g); ++mask) {
        std::vector<size_t> in_I, in_J;
        for (size_t i = 0; i < g; ++i)
            ((mask >> i) & 1 ? in_I : in_J).push_back(gamma[i]);
        std::vector<size_t> left = in_I, right = in_J;
        left.push_back(alpha);
        left.push_back(eps);
        right.push_back(phi);
        right.push_back(beta);
        total += contract(left, right);
        if (!in_J.empty()) {
            std::vector<size_t> l2 = in_I, r2 = in_J;
            l2.push_back(alpha);
            l2.push_back(beta);
            r2.push_back(phi);
            r2.push_back(eps);
            total -= contract(l2, r2);
        }
    }
    return total;
}

Rational wdvv_reconstruct(const FrobeniusAlgebra& alg, const MonomialPresentation& presentation,
                          const CorrelatorTable& basics, const std::vector<size_t>& key) {
    WdvvEngine engine(alg, presentation, basics);
    return engine.correlator(key);
}

namespace {

// Row-reduced system over unknown four-point keys.
class LinearSystem {
public:
    using Row = std::map<size_t, Rational>;  // variable -> coefficient; constant stored under npos

    static constexpr size_t kConst = static_cast<size_t>(-1);

    // Returns false if the relation contradicts earlier ones.
    bool add(Row row) {
        // Eliminate existing pivots; pivot rows are fully reduced against each other.
        std::vector<std::pair<size_t, Rational>> hits;
        for (const auto& [v, c] : row)
            if (v != kConst && pivots_.count(v))
                hits.emplace_back(v, c);
        for (const auto& [var, f] : hits)
            for (const auto& [v, c] : pivots_.at(var))
                accumulate(row, v, -f * c);
        size_t pivot = kConst;
        for (const auto& [v, c] : row)
            if (v != kConst) {
                pivot = v;
                break;
            }
        if (pivot == kConst)
            return row.count(kConst) == 0;
        Rational inv = Rational(1) / row.at(pivot);
        for (auto& [v, c] : row)
            c *= inv;
        for (auto& [p, prow] : pivots_) {
            auto hit = prow.find(pivot);
            if (hit == prow.end())
                continue;
            Rational f = hit->second;
            for (const auto& [v, c] : row)
                accumulate(prow, v, -f * c);
        }
        pivots_.emplace(pivot, std::move(row));
        return true;
    }

    size_t rank() const { return pivots_.size(); }

    // Value of var when its pivot row has no other unknowns.
    std::optional<Rational> value(size_t var) const {
        auto it = pivots_.find(var);
        if (it == pivots_.end())
            return std::nullopt;
        Rational constant = 0;
        for (const auto& [v, c] : it->second) {
            if (v == var)
                continue;
            if (v != kConst)
                return std::nullopt;
            constant = c;
        }
        return -constant;
    }

private:
    static void accumulate(Row& row, size_t v, const Rational& c) {
        auto [it, inserted] = row.emplace(v, c);
        if (!inserted) {
            it->second += c;
            if (sgn(it->second) == 0)
                row.erase(it);
        }
    }

    std::map<size_t, Row> pivots_;
};

} // namespace

FourPointSolution solve_four_point(AModel& model, const FrobeniusAlgebra& alg, const Matrix& P) {
    size_t n = alg.dim();
    std::vector<Sparse> columns(n);
    for (size_t a = 0; a < n; ++a)
        for (size_t i = 0; i < n; ++i)
            if (sgn(P[i][a]) != 0)
                columns[a].emplace_back(i, P[i][a]);

    Rational target = alg.dimension_target(4);
    FourPointSolution out;
    std::map<std::vector<size_t>, size_t> unknown_index;
    std::vector<std::vector<size_t>> unknowns;

    auto direct = [&](const std::vector<size_t>& key, Rational& value) -> bool {
        value = 0;
        for (const auto& [i0, c0] : columns[key[0]])
            for (const auto& [i1, c1] : columns[key[1]])
                for (const auto& [i2, c2] : columns[key[2]])
                    for (const auto& [i3, c3] : columns[key[3]]) {
                        try {
                            value += c0 * c1 * c2 * c3 * model.four_point({i0, i1, i2, i3}).value;
                        } catch (const Error& e) {
                            if (e.kind() != "Unevaluable")
                                throw;
                            return false;
                        }
                    }
        return true;
    };

    std::vector<size_t> key(4);
    for (key[0] = 0; key[0] < n; ++key[0])
        for (key[1] = key[0]; key[1] < n; ++key[1])
            for (key[2] = key[1]; key[2] < n; ++key[2])
                for (key[3] = key[2]; key[3] < n; ++key[3]) {
                    bool has_unit = std::find(key.begin(), key.end(), alg.unit) != key.end();
                    Rational degree = 0;
                    for (size_t i : key)
                        degree += alg.degrees[i];
                    if (has_unit) {
                        if (degree == target)
                            out.values.put(0, key, {0, "forgetting-tails"});
                        continue;
                    }
                    if (degree != target)
                        continue;
                    Rational v;
                    if (direct(key, v)) {
                        out.values.put(0, key, {v, "oGRR"});
                    } else {
                        unknown_index[key] = unknowns.size();
                        unknowns.push_back(key);
                    }
                }
    if (unknowns.empty())
        return out;

    std::vector<std::vector<Sparse>> products(n, std::vector<Sparse>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            products[i][j] = sparse(alg.basis_product(i, j));

    LinearSystem system;
    auto add_term = [&](LinearSystem::Row& row, std::vector<size_t> k, const Rational& coeff) {
        Rational degree = 0;
        for (size_t i : k)
            degree += alg.degrees[i];
        if (degree != target)
            return;
        std::sort(k.begin(), k.end());
        auto u = unknown_index.find(k);
        if (u != unknown_index.end()) {
            auto [it, inserted] = row.emplace(u->second, coeff);
            if (!inserted) {
                it->second += coeff;
                if (sgn(it->second) == 0)
                    row.erase(it);
            }
            return;
        }
        auto known = out.values.get(0, k);
        Rational v = known ? known->value : Rational(0);
        if (sgn(v) == 0)
            return;
        auto [it, inserted] = row.emplace(LinearSystem::kConst, coeff * v);
        if (!inserted) {
            it->second += coeff * v;
            if (sgn(it->second) == 0)
                row.erase(it);
        }
    };

    std::vector<size_t> nonunit;
    for (size_t i = 0; i < n; ++i)
        if (i != alg.unit)
            nonunit.push_back(i);
    bool done = false;
    for (size_t g1 : nonunit) {
        for (size_t al : nonunit) {
            for (size_t be : nonunit) {
                for (size_t ep : nonunit) {
                    Rational partial = alg.degrees[g1] + alg.degrees[al] + alg.degrees[be] + alg.degrees[ep];
                    for (size_t ph : nonunit) {
                        if (partial + alg.degrees[ph] != target)
                            continue;
                        LinearSystem::Row row;
                        for (const auto& [l, c] : products[ep][ph])
                            add_term(row, {g1, al, be, l}, c);
                        for (const auto& [l, c] : products[be][ph])
                            add_term(row, {g1, al, ep, l}, -c);
                        for (const auto& [l, c] : products[al][ep])
                            add_term(row, {g1, l, be, ph}, -c);
                        for (const auto& [l, c] : products[al][be])
                            add_term(row, {g1, l, ep, ph}, c);
                        bool has_unknown = false;
                        for (const auto& [v, c] : row)
                            if (v != LinearSystem::kConst)
                                has_unknown = true;
                        if (!has_unknown) {
                            if (!row.empty())
                                invariant_violation("four-point WDVV relation fails on evaluated values at " +
                                                    alg.labels[g1] + "," + alg.labels[al] + "," + alg.labels[be] +
                                                    "," + alg.labels[ep] + "," + alg.labels[ph]);
                            continue;
                        }
                        if (!system.add(row))
                            invariant_violation("inconsistent four-point WDVV relations");
                        ++out.relations_used;
                        if (system.rank() == unknowns.size()) {
                            done = true;
                            break;
                        }
                    }
                    if (done)
                        break;
                }
                if (done)
                    break;
            }
            if (done)
                break;
        }
        if (done)
            break;
    }
    for (size_t u = 0; u < unknowns.size(); ++u) {
        if (auto v = system.value(u))
            out.values.put(0, unknowns[u], {*v, "wdvv"});
        else
            out.undetermined.push_back(unknowns[u]);
    }
    return out;
}

PotentialSeries PotentialSeries::part(int k) const {
    PotentialSeries p = *this;
    p.terms.clear();
    for (const auto& [m, c] : terms)
        if (total_degree(m) == k)
            p.terms.emplace(m, c);
    return p;
}

Rational PotentialSeries::coeff(const Monomial& m) const {
    auto it = terms.find(m);
    return it == terms.end() ? Rational(0) : it->second;
}

PotentialSeries genus_zero_potential(WdvvEngine& engine, int order, std::vector<std::string> coordinates) {
    if (order < 3)
        fail("InvalidOrder", "potential order must be at least 3");
    const FrobeniusAlgebra& alg = engine.algebra();
    size_t n = alg.dim();
    PotentialSeries p;
    p.order = order;
    p.coordinates = std::move(coordinates);
    p.coordinate_degrees = alg.degrees;
    for (int k = 3; k <= order; ++k) {
        std::vector<size_t> key(static_cast<size_t>(k), 0);
        while (true) {
            Rational degree = 0;
            for (size_t i : key)
                degree += alg.degrees[i];
            if (degree == alg.dimension_target(static_cast<size_t>(k))) {
                Rational v = engine.correlator(key);
                if (sgn(v) != 0) {
                    Monomial m(n, 0);
                    for (size_t i : key)
                        ++m[i];
                    Rational denom = 1;
                    for (int e : m)
                        for (int f = 2; f <= e; ++f)
                            denom *= f;
                    p.terms[m] += v / denom;
                }
            }
            // Next non-decreasing tuple.
            long pos = k - 1;
            while (pos >= 0 && key[pos] == n - 1)
                --pos;
            if (pos < 0)
                break;
            ++key[pos];
            for (size_t j = static_cast<size_t>(pos) + 1; j < key.size(); ++j)
                key[j] = key[pos];
        }
    }
    return p;
}

std::string render_potential(const PotentialSeries& p) {
    Poly poly(p.coordinates.size());
    for (const auto& [m, c] : p.terms)
        poly.add_term(m, c);
    return render(poly, p.coordinates);
}

} // namespace qsing
