#include "qsing/mirror.hpp"
#include "qsing/error.hpp"

#include <algorithm>
#include <map>

namespace qsing {

Vector image_of_monomial(const FrobeniusAlgebra& A, const std::vector<Vector>& images, const Monomial& m) {
    Vector out = A.unit_vector(A.unit);
    for (size_t v = 0; v < m.size(); ++v)
        for (int e = 0; e < m[v]; ++e)
            out = A.multiply(out, images[v]);
    return out;
}

namespace {

bool is_zero(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& r) { return sgn(r) == 0; });
}

std::string render_vector(const FrobeniusAlgebra& A, const Vector& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
        if (sgn(v[i]) == 0)
            continue;
        if (!out.empty())
            out += " + ";
        out += to_string(v[i]) + "*" + A.labels[i];
    }
    return out.empty() ? "0" : out;
}

} // namespace

MirrorIso verify_ring_isomorphism(const FrobeniusAlgebra& A, const MilnorRing& B, const std::vector<Vector>& images) {
    size_t nv = B.nvars();
    if (images.size() != nv)
        fail("DimensionMismatch", "expected " + std::to_string(nv) + " generator images, got " +
                                      std::to_string(images.size()));
    for (const auto& img : images)
        if (img.size() != A.dim())
            fail("DimensionMismatch", "generator image has the wrong length");

    std::map<Monomial, Vector> cache;
    auto image = [&](const Monomial& m) -> const Vector& {
        auto it = cache.find(m);
        if (it == cache.end())
            it = cache.emplace(m, image_of_monomial(A, images, m)).first;
        return it->second;
    };

    // Defining relations of the Jacobian ideal.
    for (size_t v = 0; v < nv; ++v) {
        Poly rel = B.W.derivative(v);
        Vector total(A.dim(), Rational(0));
        for (const auto& [m, c] : rel.terms()) {
            const Vector& img = image(m);
            for (size_t i = 0; i < total.size(); ++i)
                total[i] += c * img[i];
        }
        if (!is_zero(total))
            fail("RelationFails", "relation dW/dx" + std::to_string(v) + " maps to " + render_vector(A, total));
    }

    MirrorIso iso;
    iso.generator_images = images;
    iso.b_basis = B.basis;
    size_t n = B.basis.size();
    if (n != A.dim())
        fail("DimensionMismatch", "Milnor ring has dimension " + std::to_string(n) + ", A-model algebra " +
                                      std::to_string(A.dim()));
    iso.P = zero_matrix(n, n);
    for (size_t j = 0; j < n; ++j) {
        const Vector& img = image(B.basis[j]);
        Rational want = A.grade_scale * weighted_degree(B.basis[j], B.q);
        for (size_t i = 0; i < n; ++i) {
            iso.P[i][j] = img[i];
            if (sgn(img[i]) != 0 && A.degrees[i] != want)
                fail("GradingMismatch", "image of a degree " + to_string(want / A.grade_scale) +
                                            " monomial has a component " + A.labels[i]);
        }
    }
    if (rank(iso.P) != n)
        fail("DimensionMismatch", "generator images do not span the A-model algebra");

    bool have_rho = false;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j) {
            Rational b = residue(B, Poly::monomial(B.basis[i]) * Poly::monomial(B.basis[j]));
            Vector ci(n), cj(n);
            for (size_t k = 0; k < n; ++k) {
                ci[k] = iso.P[k][i];
                cj[k] = iso.P[k][j];
            }
            Rational a = A.pair(ci, cj);
            if (sgn(b) == 0) {
                if (sgn(a) != 0)
                    fail("NonUniformPairingRatio", "A pairing is nonzero where the residue vanishes");
                continue;
            }
            Rational r = a / b;
            if (!have_rho) {
                iso.rho = r;
                have_rho = true;
            } else if (r != iso.rho) {
                fail("NonUniformPairingRatio", "pairing ratios " + to_string(iso.rho) + " and " + to_string(r));
            }
        }
    if (!have_rho || sgn(iso.rho) == 0)
        fail("NonUniformPairingRatio", "residue pairing vanishes identically");
    return iso;
}

PotentialMatch match_potentials(const PotentialSeries& A, const BPotential& B,
                                const std::vector<size_t>& identification) {
    size_t nb = B.F3.coordinates.size();
    if (identification.size() != A.coordinates.size())
        fail("DimensionMismatch", "identification does not cover the A coordinates");
    auto mapped = [&](const Monomial& m) {
        Monomial out(nb, 0);
        for (size_t i = 0; i < m.size(); ++i)
            out[identification[i]] += m[i];
        return out;
    };
    std::map<Monomial, Rational> a3, a4;
    for (const auto& [m, c] : A.terms) {
        int k = total_degree(m);
        if (k == 3)
            a3[mapped(m)] += c;
        else if (k == 4)
            a4[mapped(m)] += c;
    }
    auto drop_zero = [](std::map<Monomial, Rational>& t) {
        for (auto it = t.begin(); it != t.end();)
            it = sgn(it->second) == 0 ? t.erase(it) : std::next(it);
    };
    drop_zero(a3);
    drop_zero(a4);

    PotentialMatch out;
    std::map<Monomial, Rational> b3 = B.F3.terms, b4 = B.F4.terms;
    drop_zero(b3);
    drop_zero(b4);
    if (a3 != b3) {
        std::string where;
        for (const auto& [m, c] : a3)
            if (B.F3.coeff(m) != c) {
                where = render_monomial(m, B.F3.coordinates) + ": A " + to_string(c) + ", B " + to_string(B.F3.coeff(m));
                break;
            }
        if (where.empty())
            for (const auto& [m, c] : b3)
                if (a3.count(m) == 0) {
                    where = render_monomial(m, B.F3.coordinates) + ": A 0, B " + to_string(c);
                    break;
                }
        fail("CubicMismatch", "cubic terms differ at " + where);
    }
    out.cubic_terms = a3.size();

    std::map<Monomial, std::pair<Rational, Rational>> pairs;  // monomial -> (A, B)
    for (const auto& [m, c] : b4)
        pairs[m] = {Rational(0), c};
    for (const auto& [m, c] : a4) {
        auto it = pairs.find(m);
        if (it != pairs.end())
            it->second.first = c;
        else if (B.quartic_complete)
            pairs[m] = {c, Rational(0)};
    }
    bool have = false;
    for (const auto& [m, ab] : pairs) {
        const auto& [a, b] = ab;
        if (sgn(b) == 0)
            fail("QuarticNotProportional", "A quartic has " + render_monomial(m, B.F4.coordinates) +
                                               " where the B quartic vanishes");
        Rational r = a / b;
        if (!have) {
            out.lambda = r;
            have = true;
        } else if (r != out.lambda) {
            fail("QuarticNotProportional", "quartic ratios " + to_string(out.lambda) + " and " + to_string(r) +
                                               " at " + render_monomial(m, B.F4.coordinates));
        }
    }
    if (!have)
        fail("QuarticNotProportional", "both quartic terms vanish");
    if (sgn(out.lambda) == 0)
        fail("QuarticNotProportional", "A quartic vanishes on the B support");
    out.quartic_terms = pairs.size();
    out.verified = true;
    return out;
}

// ---- Named cases ----

namespace {

int parse_index(const std::string& text, const std::string& tag) {
    try {
        size_t used = 0;
        int n = std::stoi(text, &used);
        if (used == text.size())
            return n;
    } catch (const std::exception&) {
    }
    fail("UnknownFamily", "bad index in case '" + tag + "'");
}

ClassRef ref(long power, Rational scalar = 1, Monomial m = {0, 0}) { return {scalar, power, std::move(m)}; }

} // namespace

MirrorCase mirror_case(const std::string& tag) {
    std::vector<std::string> parts;
    size_t start = 0;
    while (true) {
        size_t colon = tag.find(':', start);
        parts.push_back(tag.substr(start, colon - start));
        if (colon == std::string::npos)
            break;
        start = colon + 1;
    }
    MirrorCase c;
    c.name = tag;
    c.b_vars = {"x", "y"};
    const std::string& head = parts[0];
    if (head == "E6" || head == "E7" || head == "E8") {
        if (parts.size() != 1)
            fail("UnknownFamily", "case '" + tag + "' takes no index");
        c.group = "J";
        if (head == "E6") {
            c.a_poly = c.b_poly = "x^3+y^4";
            c.generator = {Rational(1, 3), Rational(1, 4)};
            c.images = {ref(5), ref(10)};
            c.scaling_condition = "alpha^10 = 1/12";
            c.b_family = Family::E6;
            c.expected_basic = Rational(1, 4);
        } else if (head == "E7") {
            c.a_poly = c.b_poly = "x^3+x*y^3";
            c.generator = {Rational(1, 3), Rational(2, 9)};
            c.images = {ref(7), ref(5)};
            c.scaling_condition = "alpha^8 = 1/9";
            c.b_family = Family::E7;
            c.expected_basic = Rational(1, 9);
        } else {
            c.a_poly = c.b_poly = "x^3+y^5";
            c.generator = {Rational(1, 3), Rational(1, 5)};
            c.images = {ref(11), ref(7)};
            c.scaling_condition = "alpha^14 = 1/15";
            c.b_family = Family::E8;
            c.expected_basic = Rational(1, 5);
        }
        c.expected_lambda = Rational(-1);
        FamilyData d = family_data(*c.b_family, 0);
        // Basic correlators: <X,X,X^2,XY> for E7, <X,X,XY,XY> for E6, <Y,Y,Y^3,XY^3> for E8.
        auto pos = [&](const Monomial& m) {
            return static_cast<size_t>(std::find(d.basis.begin(), d.basis.end(), m) - d.basis.begin());
        };
        if (head == "E7")
            c.basic_key = {pos({1, 0}), pos({1, 0}), pos({2, 0}), pos({1, 1})};
        else if (head == "E6")
            c.basic_key = {pos({0, 1}), pos({0, 1}), pos({0, 2}), pos({1, 2})};
        else
            c.basic_key = {pos({0, 1}), pos({0, 1}), pos({0, 3}), pos({1, 3})};
        return c;
    }
    if (parts.size() < 2)
        fail("UnknownFamily", "case '" + tag + "' needs an index");
    int n = parse_index(parts[1], tag);
    if (head == "A") {
        if (n < 2 || parts.size() != 2)
            fail("UnknownFamily", "A:n needs n >= 2");
        c.b_vars = {"x"};
        c.a_poly = c.b_poly = "x^" + std::to_string(n + 1);
        c.group = "J";
        c.generator = {Rational(1, n + 1)};
        c.images = {ref(2, 1, {0})};
        c.b_family = Family::A;
        c.b_n = n;
        c.b_scale = n + 1;
        c.expected_lambda = Rational(-1);
        c.expected_basic = n >= 3 ? std::optional<Rational>(Rational(1, n + 1)) : std::nullopt;
        if (n >= 3)
            c.basic_key = {1, 1, size_t(n - 1), size_t(n - 1)};
        return c;
    }
    if (n < 3)
        fail("UnknownFamily", "D cases need n >= 3");
    std::string xn = "x^" + std::to_string(n);
    if (head == "D" && parts.size() == 2) {
        c.a_poly = xn + "+x*y^2";
        c.group = "max";
        c.generator = {Rational(1, n), 1 - Rational(1, 2 * n)};
        c.b_poly = xn + "*y+y^2";
        // The relation x^n + 2y fixes Y = -X^n/2, which evaluates to e1.
        c.images = {ref(n + 2), ref(n + 2)};  // second slot replaced below
        c.last_from_first = std::pair<Rational, long>(Rational(-1, 2), n);
        c.printed_images = {ref(n + 2), ref(1, Rational(-1, 2))};
        c.scaling_condition = "alpha^" + std::to_string(2 * n - 2) + " = -1/" + std::to_string(n);
        c.b_family = Family::A;
        c.b_n = 2 * n - 1;
        c.b_scale = -4 * n;  // aligns eta and F3 with the A side
        c.family_is_b_ring = false;
        c.expected_lambda = Rational(-n) / (4 * n - 5);
        c.expected_basic = Rational(1, n);
        c.basic_key = {1, 1, size_t(2 * n - 2), size_t(2 * n - 2)};
        c.sector_basic = {ref(n + 2), ref(n + 2), ref(n - 1), ref(n - 1)};
        return c;
    }
    if (head == "D" && parts.size() == 3 && parts[2] == "J") {
        if (n % 2 == 0 || n < 5)
            fail("UnknownFamily", "D:n:J needs n odd and n >= 5");
        c.a_poly = c.b_poly = xn + "+x*y^2";
        c.group = "J";
        c.generator = {Rational(1, n), Rational(n - 1) / (2 * n)};
        c.images = {ref(3), ref(0, 2 * n, {(n - 1) / 2, 0})};
        c.b_family = Family::D;
        c.b_n = n;
        c.b_scale = -2;
        c.expected_lambda = Rational(-1);
        c.expected_basic = Rational(1, n);
        c.basic_key = {1, 1, size_t(n - 2), size_t(n - 1)};
        c.sector_basic = {ref(3), ref(3), ref(n - 1), ref(n - 3)};
        return c;
    }
    if (head == "DT" && parts.size() == 2) {
        c.a_poly = xn + "*y+y^2";
        c.group = "max";
        c.generator = {Rational(1, 2 * n), Rational(1, 2)};
        c.b_poly = xn + "+x*y^2";
        c.images = {ref(3), ref(0, n, {n - 1, 0})};
        c.b_family = Family::D;
        c.b_n = n;
        c.b_scale = 1;
        c.expected_lambda = Rational(1);
        c.expected_basic = Rational(1, 2 * n);
        c.basic_key = {1, 1, size_t(n - 2), size_t(n - 1)};
        return c;
    }
    fail("UnknownFamily", "unknown case '" + tag + "'");
}

Vector resolve_class(const StateSpace& H, const GroupElement& generator, const ClassRef& r) {
    GroupElement g = group_power(generator, r.power);
    size_t sector = H.sector_index(g);
    const Sector& sec = H.sectors[sector];
    Monomial m;
    for (size_t v : sec.fixed_vars)
        m.push_back(r.monomial[v]);
    for (size_t v = 0; v < r.monomial.size(); ++v)
        if (r.monomial[v] != 0 && std::find(sec.fixed_vars.begin(), sec.fixed_vars.end(), v) == sec.fixed_vars.end())
            fail("ElementNotInGroup", "monomial uses a variable not fixed by " + render_element(g));
    long idx = H.find_class(g, m);
    if (idx < 0)
        fail("ElementNotInGroup", "no basis class " + render_monomial(m, {"x", "y"}) + " in sector " +
                                      render_element(g));
    Vector v(H.dim(), Rational(0));
    v[static_cast<size_t>(idx)] = r.scalar;
    return v;
}

CaseRun run_mirror_case(const MirrorCase& spec, const EvalOptions& options) {
    CaseRun run;
    run.spec = spec;
    QSingularity s = singularity_from_text(spec.a_poly, spec.b_vars);
    SymmetryGroup GW = max_diagonal_group(s);
    SymmetryGroup G = spec.group == "J" ? subgroup_from_generators(s, GW, {exponential_grading_element(s)}) : GW;
    run.H = build_state_space(s, G);
    AModel model(run.H, options);
    run.algebra = frobenius_algebra(model);

    std::vector<Vector> images;
    for (const auto& r : spec.images)
        images.push_back(resolve_class(run.H, spec.generator, r));
    if (spec.last_from_first) {
        Vector v = run.algebra.unit_vector(run.algebra.unit);
        for (long i = 0; i < spec.last_from_first->second; ++i)
            v = run.algebra.multiply(v, images.front());
        for (auto& x : v)
            x *= spec.last_from_first->first;
        images.back() = v;
    }
    ParsedPoly bp = parse_polynomial(spec.b_poly, spec.b_vars);
    MilnorRing B = milnor_ring(bp.poly, compute_weights(bp.poly).q);
    if (!spec.printed_images.empty()) {
        try {
            std::vector<Vector> printed;
            for (const auto& r : spec.printed_images)
                printed.push_back(resolve_class(run.H, spec.generator, r));
            verify_ring_isomorphism(run.algebra, B, printed);
        } catch (const Error& e) {
            run.printed_iso_error = e.what();
        }
    }
    try {
        run.iso = verify_ring_isomorphism(run.algebra, B, images);
    } catch (const Error& e) {
        run.error_kind = e.kind();
        run.error_message = e.what();
        return run;
    }
    run.iso.scaling_condition = spec.scaling_condition;
    if (!spec.sector_basic.empty()) {
        std::array<size_t, 4> key{};
        for (size_t i = 0; i < 4; ++i) {
            Vector v = resolve_class(run.H, spec.generator, spec.sector_basic[i]);
            key[i] = static_cast<size_t>(std::find_if(v.begin(), v.end(), [](const Rational& r) { return sgn(r) != 0; }) - v.begin());
        }
        run.sector_basic_value = model.four_point(key).value;
    }

    if (!spec.b_family)
        return run;
    FamilyData fd = family_data(*spec.b_family, spec.b_n);
    std::vector<Vector> family_images = spec.family_is_b_ring ? images : std::vector<Vector>{images[0]};
    size_t n = fd.dim();
    run.family_P = zero_matrix(run.algebra.dim(), n);
    for (size_t j = 0; j < n; ++j) {
        Vector img = image_of_monomial(run.algebra, family_images, fd.basis[j]);
        for (size_t i = 0; i < img.size(); ++i)
            run.family_P[i][j] = img[i];
    }
    try {
        run.transported = transport(run.algebra, run.family_P, fd.labels);
        run.four = solve_four_point(model, run.transported, run.family_P);
        if (!spec.basic_key.empty())
            if (auto hit = run.four.values.get(0, spec.basic_key))
                run.basic_value = hit->value;
        MonomialPresentation pres{fd.basis};
        WdvvEngine engine(run.transported, pres, run.four.values);
        run.a_potential = genus_zero_potential(engine, 4, fd.labels);
        run.b_potential = bmodel_potential(*spec.b_family, spec.b_n, spec.b_scale);
        std::vector<size_t> identity(n);
        for (size_t i = 0; i < n; ++i)
            identity[i] = i;
        run.match = match_potentials(*run.a_potential, *run.b_potential, identity);
    } catch (const Error& e) {
        run.error_kind = e.kind();
        run.error_message = e.what();
    }
    return run;
}

} // namespace qsing
