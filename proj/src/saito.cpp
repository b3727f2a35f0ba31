#include "qsing/saito.hpp"
#include "qsing/error.hpp"
#include "qsing/groebner.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace qsing {

Family parse_family(const std::string& tag) {
    if (tag == "A")
        return Family::A;
    if (tag == "D")
        return Family::D;
    if (tag == "E6")
        return Family::E6;
    if (tag == "E7")
        return Family::E7;
    if (tag == "E8")
        return Family::E8;
    fail("UnknownFamily", "unknown family '" + tag + "'");
}

std::string to_string(Family f) {
    switch (f) {
    case Family::A: return "A";
    case Family::D: return "D";
    case Family::E6: return "E6";
    case Family::E7: return "E7";
    case Family::E8: return "E8";
    }
    return "?";
}

long FamilyData::index_of_label(const std::string& label) const {
    auto it = std::find(labels.begin(), labels.end(), label);
    return it == labels.end() ? -1 : static_cast<long>(it - labels.begin());
}

namespace {

Monomial mono(std::initializer_list<int> e) { return Monomial(e); }

void finish(FamilyData& d) {
    d.sigma.clear();
    d.degrees.clear();
    for (const auto& m : d.basis) {
        Rational w = weighted_degree(m, d.q);
        d.degrees.push_back(w);
        d.sigma.push_back(1 - w);
    }
    d.c_hat = 0;
    for (const auto& qi : d.q)
        d.c_hat += 1 - 2 * qi;
}

// E-series: label s_k with k = denominator * sigma, listed by increasing k.
FamilyData e_series(Family f, const std::string& text, std::vector<Rational> q, long denom) {
    FamilyData d;
    d.family = f;
    ParsedPoly p = parse_polynomial(text, std::vector<std::string>{"x", "y"});
    d.W = p.poly;
    d.vars = p.vars;
    d.q = std::move(q);
    MilnorRing r = milnor_ring(d.W, d.q);
    std::vector<std::pair<long, Monomial>> entries;
    for (const auto& m : r.basis) {
        Rational k = (1 - weighted_degree(m, d.q)) * denom;
        entries.emplace_back(k.get_num().get_si(), m);
    }
    std::sort(entries.begin(), entries.end());
    for (const auto& [k, m] : entries) {
        d.basis.push_back(m);
        d.labels.push_back("s" + std::to_string(k));
    }
    d.base_form = denom;
    finish(d);
    return d;
}

Poly truncate(const Poly& p, int order) {
    Poly out(p.nvars());
    for (const auto& [m, c] : p.terms())
        if (total_degree(m) <= order)
            out.add_term(m, c);
    return out;
}

// (z;k) = Gamma(z+k)/Gamma(z), for any integer k.
Rational shifted_factorial(const Rational& z, long k) {
    Rational out = 1;
    if (k >= 0) {
        for (long j = 0; j < k; ++j)
            out *= z + j;
    } else {
        for (long j = 1; j <= -k; ++j) {
            Rational f = z - j;
            if (sgn(f) == 0)
                invariant_violation("shifted factorial pole");
            out /= f;
        }
    }
    return out;
}

// Exponent vectors of all multi-indices alpha with sum alpha_mu sigma_mu == target.
void enumerate_weight(const std::vector<Rational>& sigma, const Rational& target, size_t pos, Monomial& cur,
                      std::vector<Monomial>& out) {
    if (pos == sigma.size()) {
        if (sgn(target) == 0)
            out.push_back(cur);
        return;
    }
    Rational rest = target;
    for (int e = 0; sgn(rest) >= 0; ++e) {
        cur[pos] = e;
        enumerate_weight(sigma, rest, pos + 1, cur, out);
        rest -= sigma[pos];
    }
    cur[pos] = 0;
}

// Solves sum_j k_j b_j = v for the monomials b_j of W (a square exponent matrix).
Vector solve_exponents(const std::vector<Monomial>& rows, const std::vector<Rational>& v) {
    size_t n = v.size();
    Matrix a = zero_matrix(n, rows.size());
    for (size_t j = 0; j < rows.size(); ++j)
        for (size_t i = 0; i < n; ++i)
            a[i][j] = rows[j][i];
    Vector x;
    bool unique = false;
    if (!solve_linear(a, v, x, unique) || !unique)
        invariant_violation("exponent matrix is not invertible");
    return x;
}

Rational factorial_product(const Monomial& m) {
    Rational out = 1;
    for (int e : m)
        for (int f = 2; f <= e; ++f)
            out *= f;
    return out;
}

std::vector<size_t> key_of(const Monomial& counts) {
    std::vector<size_t> key;
    for (size_t i = 0; i < counts.size(); ++i)
        for (int e = 0; e < counts[i]; ++e)
            key.push_back(i);
    return key;
}

// Reads a polynomial in the s-labels into a correlator table: coefficient times prod(mult!).
void load_table(const FamilyData& d, const std::string& text, std::map<std::vector<size_t>, Rational>& table) {
    ParsedPoly p = parse_polynomial(text, d.labels);
    for (const auto& [m, c] : p.poly.terms())
        table[key_of(m)] = c * factorial_product(m);
}

Rational lookup(const std::map<std::vector<size_t>, Rational>& t, std::vector<size_t> key) {
    std::sort(key.begin(), key.end());
    auto it = t.find(key);
    return it == t.end() ? Rational(0) : it->second;
}

} // namespace

FamilyData family_data(Family f, int n) {
    FamilyData d;
    d.family = f;
    d.n = n;
    switch (f) {
    case Family::A: {
        if (n < 1)
            fail("UnknownFamily", "A_n needs n >= 1");
        d.vars = {"x"};
        d.W = Poly::monomial(mono({n + 1}));
        d.q = {Rational(1, n + 1)};
        for (int i = 0; i < n; ++i) {
            d.basis.push_back(mono({i}));
            d.labels.push_back("s" + std::to_string(i));
        }
        d.base_form = 1;
        finish(d);
        return d;
    }
    case Family::D: {
        if (n < 2)
            fail("UnknownFamily", "D family needs n >= 2");
        d.vars = {"x", "y"};
        d.W = Poly::monomial(mono({n, 0})) + Poly::monomial(mono({1, 2}));
        d.q = {Rational(1, n), Rational(n - 1) / (2 * n)};
        for (int i = 0; i < n; ++i) {
            d.basis.push_back(mono({i, 0}));
            d.labels.push_back("s" + std::to_string(i));
        }
        d.basis.push_back(mono({0, 1}));
        d.labels.push_back("s01");
        d.base_form = 2 * n;
        finish(d);
        return d;
    }
    case Family::E6:
        return e_series(f, "x^3+y^4", {Rational(1, 3), Rational(1, 4)}, 12);
    case Family::E7:
        return e_series(f, "x^3+x*y^3", {Rational(1, 3), Rational(2, 9)}, 9);
    case Family::E8:
        return e_series(f, "x^3+y^5", {Rational(1, 3), Rational(1, 5)}, 15);
    }
    fail("UnknownFamily", "unknown family");
}

int flat_coordinate_degree_bound(const FamilyData& data) {
    Rational lo = *std::min_element(data.sigma.begin(), data.sigma.end());
    Rational hi = *std::max_element(data.sigma.begin(), data.sigma.end());
    return static_cast<int>(floor_of(hi / lo).get_si());
}

// Noumi-Yamada: s_nu = sum over alpha of weight sigma_nu of c_nu(l(alpha)) t^alpha / alpha!,
// l(alpha) = sum alpha_mu phi_mu. Writing l - nu = sum k_j b_j over the monomials b_j of W and
// nu + 1 = sum m_j b_j, c_nu(l) = prod (-1)^k_j (m_j; k_j), and 0 when some k_j is not integral.
FlatCoordMap flat_coordinates(Family f, int n, int order) {
    FlatCoordMap map;
    map.data = family_data(f, n);
    map.order = order;
    const FamilyData& d = map.data;
    size_t m = d.dim();
    size_t nv = d.vars.size();
    std::vector<Monomial> rows;
    for (const auto& [b, c] : d.W.terms())
        rows.push_back(b);

    for (size_t nu = 0; nu < m; ++nu) {
        std::vector<Rational> shifted(nv);
        for (size_t i = 0; i < nv; ++i)
            shifted[i] = d.basis[nu][i] + 1;
        Vector m0 = solve_exponents(rows, shifted);

        std::vector<Monomial> alphas;
        Monomial cur(m, 0);
        enumerate_weight(d.sigma, d.sigma[nu], 0, cur, alphas);
        Poly s(m);
        for (const auto& alpha : alphas) {
            if (total_degree(alpha) > order)
                continue;
            std::vector<Rational> diff(nv, Rational(0));
            for (size_t mu = 0; mu < m; ++mu)
                for (size_t i = 0; i < nv; ++i)
                    diff[i] += alpha[mu] * d.basis[mu][i];
            for (size_t i = 0; i < nv; ++i)
                diff[i] -= d.basis[nu][i];
            Vector k = solve_exponents(rows, diff);
            bool integral = std::all_of(k.begin(), k.end(), [](const Rational& r) { return is_integer(r); });
            if (!integral)
                continue;
            Rational c = 1;
            for (size_t j = 0; j < k.size(); ++j) {
                long kj = k[j].get_num().get_si();
                c *= shifted_factorial(m0[j], kj);
                if (kj % 2 != 0)
                    c = -c;
            }
            s.add_term(alpha, c / factorial_product(alpha));
        }
        map.s_of_t.push_back(s);
    }

    // t = s - h(t) with h = s_of_t - id, iterated to a fixed point modulo degree > order.
    std::vector<Poly> higher(m);
    for (size_t nu = 0; nu < m; ++nu)
        higher[nu] = map.s_of_t[nu] - Poly::variable(m, nu);
    std::vector<Poly> t(m);
    for (size_t nu = 0; nu < m; ++nu)
        t[nu] = Poly::variable(m, nu);
    for (int iter = 0; iter < order; ++iter) {
        std::vector<Poly> next(m);
        for (size_t nu = 0; nu < m; ++nu)
            next[nu] = truncate(Poly::variable(m, nu) - higher[nu].substitute(t), order);
        if (next == t)
            break;
        t = std::move(next);
    }
    map.t_of_s = std::move(t);
    return map;
}

bool inversion_holds(const FlatCoordMap& map) {
    size_t m = map.data.dim();
    for (size_t nu = 0; nu < m; ++nu) {
        Poly composed = truncate(map.s_of_t[nu].substitute(map.t_of_s), map.order);
        if (composed != Poly::variable(m, nu))
            return false;
    }
    return true;
}

Rational BModelTables::three(std::vector<size_t> key) const { return lookup(c3, std::move(key)); }
Rational BModelTables::four(std::vector<size_t> key) const { return lookup(c4, std::move(key)); }

namespace {

void closed_form_a(BModelTables& t) {
    int n = t.data.n;
    Rational unit(1, n + 1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i + j == n - 1)
                t.eta[i][j] = unit;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            int k = n - 1 - i - j;
            if (k >= j)
                t.c3[{size_t(i), size_t(j), size_t(k)}] = unit;
        }
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) {
                int l = 2 * n - i - j - k;
                if (l < k || l >= n)
                    continue;
                int lo = std::min({i, j, k, l, n - i, n - j, n - k, n - l});
                if (lo != 0)
                    t.c4[{size_t(i), size_t(j), size_t(k), size_t(l)}] = Rational(-lo) * unit * unit;
            }
}

void closed_form_d(BModelTables& t) {
    int n = t.data.n;
    size_t y = static_cast<size_t>(n);
    for (int i = 0; i < n; ++i)
        t.eta[i][n - 1 - i] = 1;
    t.eta[y][y] = -n;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            int k = n - 1 - i - j;
            if (k >= j)
                t.c3[{size_t(i), size_t(j), size_t(k)}] = 1;
        }
    t.c3[{0, y, y}] = -n;
    auto bracket = [&](int a, int b) { return a + b <= n - 1 ? Rational(2 * (n - a - b) - 1, 2) : Rational(0); };
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = j; k < n; ++k) {
                int l = 2 * n - 1 - i - j - k;
                if (l < k || l >= n)
                    continue;
                Rational v = Rational(-1, n) * (Rational(l) - bracket(i, j) - bracket(k, j) - bracket(i, k));
                if (sgn(v) != 0)
                    t.c4[{size_t(i), size_t(j), size_t(k), size_t(l)}] = v;
            }
    for (int i = 0; i < n; ++i) {
        int j = n - i;
        if (j >= i && j < n)
            t.c4[{size_t(i), size_t(j), y, y}] = Rational(-1, 2);
    }
}

const char* kE6Cubic = "s6*s8*s12 + s5*s9*s12 + 1/2*s2*s12^2 + 1/2*s8*s9^2";
const char* kE6Quartic = "-1/8*s5*s9*s6^2 - 1/12*s8^2*s5^2 - 1/18*s2*s8^3 - 1/8*s2*s6*s9^2";
const char* kE7Cubic = "1/2*s1*s9^2 + s4*s6*s9 - 3/2*s5*s7^2 - 3/2*s5^2*s9 + 1/2*s6^2*s7 + s3*s7*s9";
const char* kE7Quartic = "-1/18*s3*s4*s6^2 - 1/6*s1*s4*s7^2 + 1/18*s3^2*s6*s7";
const char* kE8Cubic = "s4*s12*s15 + s7*s9*s15 + s6*s10*s15 + 1/2*s1*s15^2 + s9*s10*s12 + 1/2*s7*s12^2";
const char* kE8Quartic = "-1/18*s7^3*s10 - 1/10*s6*s7*s9^2 - 1/10*s7*s6^2*s12 - 1/15*s4*s9^3 - 1/6*s4*s7*s10^2"
                         " - 1/5*s4*s6*s9*s12 - 1/18*s1*s10^3 - 1/10*s1*s9^2*s12 - 1/10*s1*s6*s12^2";

void transcribed(BModelTables& t, const char* cubic, const char* quartic) {
    load_table(t.data, cubic, t.c3);
    load_table(t.data, quartic, t.c4);
    // eta_ij = C_{unit,i,j}; the unit is phi = 1, the last coordinate.
    size_t u = t.data.dim() - 1;
    for (size_t i = 0; i < t.data.dim(); ++i)
        for (size_t j = 0; j < t.data.dim(); ++j)
            t.eta[i][j] = t.three({u, i, j});
}

void scale_tables(BModelTables& t, const Rational& s) {
    for (auto& row : t.eta)
        for (auto& v : row)
            v *= s;
    for (auto& [k, v] : t.c3)
        v *= s;
    for (auto& [k, v] : t.c4)
        v *= s;
}

} // namespace

BModelTables bmodel_correlators(Family f, int n, const Rational& primitive_scale) {
    BModelTables t;
    t.data = family_data(f, n);
    t.primitive_scale = primitive_scale;
    t.eta = zero_matrix(t.data.dim(), t.data.dim());
    switch (f) {
    case Family::A: closed_form_a(t); break;
    case Family::D: closed_form_d(t); break;
    case Family::E6: transcribed(t, kE6Cubic, kE6Quartic); break;
    case Family::E7:
        transcribed(t, kE7Cubic, kE7Quartic);
        t.quartic_complete = false;  // only the part needed for the basic correlators is displayed
        break;
    case Family::E8: transcribed(t, kE8Cubic, kE8Quartic); break;
    }
    scale_tables(t, primitive_scale);
    return t;
}

BModelTables bmodel_oracle(Family f, int n, const Rational& primitive_scale) {
    BModelTables t;
    t.data = family_data(f, n);
    t.primitive_scale = primitive_scale;
    const FamilyData& d = t.data;
    size_t m = d.dim();
    size_t nv = d.vars.size();
    Rational scale = d.base_form * primitive_scale;
    FlatCoordMap flat = flat_coordinates(f, n, flat_coordinate_degree_bound(d));

    MilnorRing r0 = milnor_ring(d.W, d.q);
    std::vector<Poly> phi;
    for (const auto& b : d.basis)
        phi.push_back(Poly::monomial(b));

    t.eta = zero_matrix(m, m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j)
            t.eta[i][j] = residue(r0, phi[i] * phi[j]) * scale;
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i; j < m; ++j)
            for (size_t k = j; k < m; ++k) {
                Rational v = residue(r0, phi[i] * phi[j] * phi[k]);
                if (sgn(v) != 0)
                    t.c3[{i, j, k}] = v * scale;
            }

    // Weighted order: leading forms of the deformed partials are the partials of W.
    Integer lcm = 1;
    for (const auto& qi : d.q)
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), qi.get_den_mpz_t());
    std::vector<long> weights;
    for (const auto& qi : d.q)
        weights.push_back(Rational(qi * lcm).get_num().get_si());
    TermOrder order = TermOrder::weighted(weights);
    std::vector<Poly> gb0;
    std::vector<Monomial> standard;
    {
        std::vector<Poly> partials;
        for (size_t v = 0; v < nv; ++v)
            partials.push_back(d.W.derivative(v));
        gb0 = groebner_basis(partials, order);
        standard_monomials(gb0, nv, order, standard);
    }
    Monomial socle = standard.front();
    for (const auto& s : standard)
        if (weighted_degree(s, d.q) > weighted_degree(socle, d.q))
            socle = s;
    Rational socle_residue = residue(r0, Poly::monomial(socle));

    std::vector<std::vector<Poly>> jac(m, std::vector<Poly>(m));  // d t_nu / d s_i
    for (size_t nu = 0; nu < m; ++nu)
        for (size_t i = 0; i < m; ++i)
            jac[nu][i] = flat.t_of_s[nu].derivative(i);

    Rational target = d.c_hat + 1;
    for (size_t l = 0; l < m; ++l) {
        std::vector<Poly> point(m);
        for (size_t i = 0; i < m; ++i)
            point[i] = Poly::constant(nv, Rational(i == l ? 1 : 0));
        auto at = [&](const Poly& p) { return p.substitute(point).coeff(Monomial(nv, 0)); };
        Poly Wt = d.W;
        for (size_t nu = 0; nu < m; ++nu)
            Wt += phi[nu] * at(flat.t_of_s[nu]);
        std::vector<Poly> partials;
        for (size_t v = 0; v < nv; ++v)
            partials.push_back(Wt.derivative(v));
        std::vector<Poly> gb = groebner_basis(partials, order);
        std::vector<Poly> dW(m, Poly(nv));
        for (size_t i = 0; i < m; ++i)
            for (size_t nu = 0; nu < m; ++nu) {
                Rational c = at(jac[nu][i]);
                if (sgn(c) != 0)
                    dW[i] += phi[nu] * c;
            }
        for (size_t i = 0; i < m; ++i)
            for (size_t j = i; j < m; ++j)
                for (size_t k = j; k < m; ++k) {
                    if (d.degrees[i] + d.degrees[j] + d.degrees[k] + d.degrees[l] != target)
                        continue;
                    Poly nf = normal_form(dW[i] * dW[j] * dW[k], gb, order);
                    Rational v = nf.coeff(socle) * socle_residue * scale;
                    std::vector<size_t> key = {i, j, k, l};
                    std::sort(key.begin(), key.end());
                    auto [it, inserted] = t.c4.emplace(key, v);
                    if (!inserted && it->second != v)
                        invariant_violation("four-point residue depends on the differentiation slot");
                }
    }
    for (auto it = t.c4.begin(); it != t.c4.end();)
        it = sgn(it->second) == 0 ? t.c4.erase(it) : std::next(it);
    return t;
}

BPotential potential_from_tables(const BModelTables& tables) {
    BPotential p;
    p.family = tables.data.family;
    p.n = tables.data.n;
    p.primitive_scale = tables.primitive_scale;
    p.c_hat = tables.data.c_hat;
    p.eta = tables.eta;
    p.quartic_complete = tables.quartic_complete;
    auto fill = [&](PotentialSeries& s, int order, const std::map<std::vector<size_t>, Rational>& table) {
        s.order = order;
        s.coordinates = tables.data.labels;
        s.coordinate_degrees = tables.data.degrees;
        for (const auto& [key, v] : table) {
            Monomial m(tables.data.dim(), 0);
            for (size_t i : key)
                ++m[i];
            s.terms[m] += v / factorial_product(m);
        }
    };
    fill(p.F3, 3, tables.c3);
    fill(p.F4, 4, tables.c4);
    return p;
}

BPotential bmodel_potential(Family f, int n, const Rational& primitive_scale) {
    return potential_from_tables(bmodel_correlators(f, n, primitive_scale));
}

BPotential rescale_potential(const BPotential& p, const Rational& lambda) {
    if (sgn(lambda) == 0)
        fail("ZeroLambda", "rescaling factor must be nonzero");
    BPotential out = p;
    for (auto& [m, c] : out.F4.terms)
        c *= lambda;
    out.lambda *= lambda;
    return out;
}

} // namespace qsing
