#include "helpers.hpp"

#include "qsing/error.hpp"
#include "qsing/mirror.hpp"

#include <algorithm>

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

GroupElement J_of(const StateSpace& H) { return exponential_grading_element(H.singularity); }

Monomial family_monomial(const PotentialSeries& p, std::initializer_list<std::pair<const char*, int>> powers) {
    Monomial m(p.coordinates.size(), 0);
    for (const auto& [name, e] : powers) {
        auto it = std::find(p.coordinates.begin(), p.coordinates.end(), name);
        REQUIRE(it != p.coordinates.end());
        m[static_cast<size_t>(it - p.coordinates.begin())] += e;
    }
    return m;
}

} // namespace

TEST_CASE("three-point examples on E7") {
    StateSpace H = state_space_J("x^3+x*y^3");
    GroupElement J = J_of(H);
    AModel model(H);
    CHECK(model.three_point(class_of(H, J, 1), class_of(H, J, 2), class_of(H, J, 7)).value == 1);
    size_t y2 = class_of(H, J, 0, {0, 2});
    CorrelatorEntry pair = model.three_point(y2, y2, H.unit);
    CHECK(pair.value == Q(-1, 3));
    CHECK(pair.provenance == "pairing");
    CorrelatorEntry ramond = model.three_point(class_of(H, J, 5), class_of(H, J, 5), y2);
    CHECK(ramond.value == 1);
    CHECK(ramond.provenance == "composition-solve");
    // Fails the group rule.
    CHECK(model.three_point(class_of(H, J, 2), class_of(H, J, 2), class_of(H, J, 2)).value == 0);

    AModel flipped(H, EvalOptions{-1});
    CHECK(flipped.three_point(class_of(H, J, 5), class_of(H, J, 5), y2).value == -1);
}

TEST_CASE("four-point oGRR examples") {
    StateSpace e7 = state_space_J("x^3+x*y^3");
    GroupElement J = J_of(e7);
    AModel m7(e7);
    CorrelatorEntry v = m7.four_point({class_of(e7, J, 2), class_of(e7, J, 4), class_of(e7, J, 7), class_of(e7, J, 7)});
    CHECK(v.value == Q(1, 9));
    CHECK(v.provenance == "oGRR");

    StateSpace e6 = state_space_J("x^3+y^4");
    GroupElement J6 = J_of(e6);
    AModel m6(e6);
    CHECK(m6.four_point({class_of(e6, J6, 10), class_of(e6, J6, 10), class_of(e6, J6, 7), class_of(e6, J6, 11)}).value ==
          Q(1, 4));
    CHECK(m6.four_point({class_of(e6, J6, 5), class_of(e6, J6, 5), class_of(e6, J6, 2), class_of(e6, J6, 2)}).value ==
          Q(1, 3));

    for (int n = 3; n <= 8; ++n) {
        StateSpace a = state_space_J("x^" + std::to_string(n + 1));
        GroupElement Ja = J_of(a);
        AModel ma(a);
        CHECK(ma.four_point({class_of(a, Ja, 2), class_of(a, Ja, 2), class_of(a, Ja, n), class_of(a, Ja, n)}).value ==
              Q(1, n + 1));
    }
    // E7's x-line has degree -1 in this frame and contributes nothing.
    std::vector<Rational> lines = ogrr_line_contributions(
        e7.singularity, e7.group, m7.frame_of({class_of(e7, J, 2), class_of(e7, J, 4), class_of(e7, J, 7), class_of(e7, J, 7)}));
    CHECK(lines == std::vector<Rational>{0, Q(1, 9)});

    CorrelatorFrame index_zero = m7.frame_of({class_of(e7, J, 5), class_of(e7, J, 5), class_of(e7, J, 5), class_of(e7, J, 5)});
    CHECK(error_kind([&] { four_point_ogrr(e7.singularity, e7.group, index_zero); }) == "NotConcave");
}

TEST_CASE("witten degree registry") {
    StateSpace e7 = state_space_J("x^3+x*y^3");
    GroupElement J = J_of(e7);
    AModel m7(e7);
    CorrelatorFrame f = m7.frame_of({class_of(e7, J, 5), class_of(e7, J, 5), class_of(e7, J, 5), class_of(e7, J, 5)});
    CHECK(witten_degree_lookup(e7.singularity, f) == -3);
    for (int n : {5, 7, 9}) {
        StateSpace d = state_space_J("x^" + std::to_string(n) + "+x*y^2");
        GroupElement Jd = J_of(d);
        AModel md(d);
        CorrelatorFrame fd = md.frame_of({class_of(d, Jd, 3), class_of(d, Jd, n - 2), class_of(d, Jd, 3), class_of(d, Jd, n - 2)});
        CHECK(witten_degree_lookup(d.singularity, fd) == -2);
    }
    StateSpace e6 = state_space_J("x^3+y^4");
    AModel m6(e6);
    CorrelatorFrame g = m6.frame_of({0, 0, 0, 0});
    CHECK(error_kind([&] { witten_degree_lookup(e6.singularity, g); }) == "NotInRegistry");
}

TEST_CASE("Ramond three-point solutions for D") {
    for (int n = 3; n <= 8; ++n) {
        StateSpace H = state_space_max("x^" + std::to_string(n) + "+x*y^2");
        GroupElement lambda = {Q(1, n), 1 - Q(1, 2 * n)};
        AModel model(H);
        size_t ye0 = class_of(H, lambda, 0, {0, 1});
        for (int a = 1; a <= n - 2; ++a) {
            CorrelatorEntry e = model.three_point(ye0, class_of(H, lambda, n + 1 + a), class_of(H, lambda, 2 * n - a));
            CHECK(e.value == 1);
        }
    }
    for (int n : {5, 7, 9}) {
        StateSpace H = state_space_J("x^" + std::to_string(n) + "+x*y^2");
        GroupElement J = J_of(H);
        AModel model(H);
        size_t xe0 = class_of(H, J, 0, {(n - 1) / 2, 0});
        size_t ye0 = class_of(H, J, 0, {0, 1});
        Rational r = model.three_point(class_of(H, J, 3), class_of(H, J, n - 2), xe0).value;
        Rational s = model.three_point(class_of(H, J, 3), class_of(H, J, n - 2), ye0).value;
        CHECK(r == 0);
        CHECK(s == 1);
        CHECK(2 * n * r * r - 2 * s * s == -2);
    }
}

TEST_CASE("Frobenius algebra products") {
    StateSpace e7 = state_space_J("x^3+x*y^3");
    AModel m7(e7);
    FrobeniusAlgebra a7 = frobenius_algebra(m7);
    CHECK(a7.is_associative());
    for (size_t i = 0; i < a7.dim(); ++i)
        CHECK(a7.basis_product(a7.unit, i) == a7.unit_vector(i));

    for (int n : {5, 7, 9}) {
        StateSpace H = state_space_J("x^" + std::to_string(n) + "+x*y^2");
        GroupElement J = J_of(H);
        AModel model(H);
        FrobeniusAlgebra alg = frobenius_algebra(model);
        CHECK(alg.is_associative());
        Vector e3 = alg.unit_vector(class_of(H, J, 3));
        Vector power = e3;
        for (int l = 1; l <= n - 1; ++l) {
            if (l > 1)
                power = alg.multiply(power, e3);
            if (l < (n - 1) / 2)
                CHECK(power == alg.unit_vector(class_of(H, J, 2 * l + 1)));
            if (l >= (n + 1) / 2) {
                Vector want = alg.unit_vector(class_of(H, J, 2 * l - n + 1));
                for (auto& x : want)
                    x *= -2;
                CHECK(power == want);
            }
        }
    }
}

TEST_CASE("correlator table obeys the dimension and group rules") {
    for (const char* tag : {"E7", "E6", "A:5", "D:4", "D:5:J", "DT:4"}) {
        CAPTURE(tag);
        MirrorCase spec = mirror_case(tag);
        QSingularity s = singularity_from_text(spec.a_poly);
        SymmetryGroup GW = max_diagonal_group(s);
        SymmetryGroup G = spec.group == "J" ? subgroup_from_generators(s, GW, {exponential_grading_element(s)}) : GW;
        StateSpace H = build_state_space(s, G);
        AModel model(H);
        FrobeniusAlgebra alg = frobenius_algebra(model);
        CHECK(alg.is_associative());
        FourPointSolution sol = solve_four_point(model, alg, identity_matrix(alg.dim()));
        for (const auto& [key, entry] : sol.values.entries()) {
            if (entry.value == 0)
                continue;
            Rational deg = 0;
            for (size_t i : key.second)
                deg += H.degrees[i];
            CHECK(deg == 2 * (s.c_hat + 1));
            CHECK(group_rule(s, model.frame_of(key.second)));
        }
        for (const auto& [key, entry] : model.table().entries()) {
            if (entry.value == 0 || key.second.size() != 3)
                continue;
            Rational deg = 0;
            for (size_t i : key.second)
                deg += H.degrees[i];
            CHECK(deg == 2 * s.c_hat);
        }
    }
}

TEST_CASE("E7 genus-zero potential") {
    CaseRun run = run_mirror_case(mirror_case("E7"));
    REQUIRE(run.a_potential);
    const PotentialSeries& F = *run.a_potential;
    CHECK(F.coeff(family_monomial(F, {{"s9", 2}, {"s1", 1}})) == Q(1, 2));
    CHECK(F.coeff(family_monomial(F, {{"s6", 2}, {"s3", 1}, {"s4", 1}})) == Q(1, 18));
    CHECK(F.coeff(family_monomial(F, {{"s7", 2}, {"s4", 1}, {"s1", 1}})) == Q(1, 6));
    CHECK(F.coeff(family_monomial(F, {{"s6", 1}, {"s7", 1}, {"s3", 2}})) == Q(-1, 18));
    // Every homogeneous part obeys the dimension rule.
    for (const auto& [m, c] : F.terms) {
        Rational deg = 0;
        for (size_t i = 0; i < m.size(); ++i)
            deg += m[i] * run.transported.degrees[i];
        CHECK(deg == run.transported.dimension_target(static_cast<size_t>(total_degree(m))));
    }

    // Five-point correlators all reduce to the listed basics.
    FamilyData fd = family_data(Family::E7, 0);
    WdvvEngine engine(run.transported, MonomialPresentation{fd.basis}, run.four.values);
    PotentialSeries F5 = genus_zero_potential(engine, 5, fd.labels);
    CHECK(!F5.part(5).terms.empty());
}

TEST_CASE("A2 potential") {
    CaseRun run = run_mirror_case(mirror_case("A:2"));
    REQUIRE(run.a_potential);
    const PotentialSeries& F = *run.a_potential;
    // <e2,e2,e2,e2> = 1/3 over 4!.
    PotentialSeries F4 = F.part(4);
    CHECK(F4.terms.size() == 1);
    CHECK(F4.coeff(family_monomial(F, {{"s1", 4}})) == Q(1, 72));
    CHECK(F.part(3).coeff(family_monomial(F, {{"s0", 2}, {"s1", 1}})) == Q(1, 2));
}

TEST_CASE("wdvv_reconstruct handles dimension-violating keys and missing basics") {
    CaseRun run = run_mirror_case(mirror_case("E6"));
    FamilyData fd = family_data(Family::E6, 0);
    MonomialPresentation pres{fd.basis};
    // Five copies of the unit violate the dimension rule.
    std::vector<size_t> key(5, run.transported.unit);
    CHECK(wdvv_reconstruct(run.transported, pres, run.four.values, key) == 0);
    CorrelatorTable empty;
    bool missing = false;
    // The basic four-point key itself cannot be reconstructed from an empty table.
    REQUIRE(!run.spec.basic_key.empty());
    try {
        wdvv_reconstruct(run.transported, pres, empty, run.spec.basic_key);
    } catch (const Error& e) {
        missing = e.kind() == "MissingBasic";
    }
    CHECK(missing);
    CHECK(wdvv_reconstruct(run.transported, pres, run.four.values, run.spec.basic_key) == *run.basic_value);
}

TEST_CASE("E6 three-point data factors as A2 tensor A3") {
    StateSpace a2 = state_space_max("x^3");
    StateSpace a3 = state_space_max("y^4");
    StateSpace e6 = state_space_max("x^3+y^4");
    StateSpace t = tensor_state_space(a2, a3);
    AModel m2(a2), m3(a3), m6(e6);
    REQUIRE(t.dim() == e6.dim());
    // Match classes through their sectors (x phase from A2, y phase from A3).
    std::vector<size_t> to_e6(t.dim());
    for (size_t i = 0; i < t.dim(); ++i) {
        long idx = e6.find_class(t.sectors[t.basis[i].sector].gamma, t.basis[i].monomial);
        REQUIRE(idx >= 0);
        to_e6[i] = static_cast<size_t>(idx);
    }
    for (size_t i = 0; i < t.dim(); ++i)
        for (size_t j = 0; j < t.dim(); ++j)
            for (size_t k = 0; k < t.dim(); ++k) {
                auto [i1, i2] = t.tensor_factors[i];
                auto [j1, j2] = t.tensor_factors[j];
                auto [k1, k2] = t.tensor_factors[k];
                Rational product = m2.three_point(i1, j1, k1).value * m3.three_point(i2, j2, k2).value;
                CHECK(m6.three_point(to_e6[i], to_e6[j], to_e6[k]).value == product);
            }
}
