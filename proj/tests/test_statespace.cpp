#include "helpers.hpp"

#include "qsing/error.hpp"

#include <algorithm>

using namespace qsing;
using namespace qsing::test;

namespace {

const char* kCases[] = {"x^3+x*y^3", "x^3+y^4", "x^3+y^5", "x^5+x*y^2", "x^6+x*y^2", "x^4*y+y^2", "x^7"};

std::vector<StateSpace> case_spaces() {
    std::vector<StateSpace> out;
    for (const char* p : kCases) {
        out.push_back(state_space_J(p));
        out.push_back(state_space_max(p));
    }
    return out;
}

} // namespace

TEST_CASE("build_sector examples") {
    QSingularity e7 = singularity_from_text("x^3+x*y^3");
    SymmetryGroup G = max_diagonal_group(e7);
    GroupElement J = exponential_grading_element(e7);

    Sector s3 = build_sector(e7, G, group_power(J, 3));
    CHECK(s3.gamma == GroupElement{Q(0), Q(2, 3)});
    CHECK(s3.fixed_vars == std::vector<size_t>{0});
    CHECK(s3.N_gamma == 1);
    CHECK(s3.milnor.mu == 2);
    CHECK(s3.is_ramond);

    Sector s1 = build_sector(e7, G, J);
    CHECK(s1.N_gamma == 0);
    CHECK_FALSE(s1.is_ramond);
    CHECK(s1.invariants.size() == 1);
    CHECK(s1.iota == 0);

    Sector s0 = build_sector(e7, G, group_identity(2));
    CHECK(s0.milnor.mu == 7);
    CHECK(s0.iota == -(Q(1, 3) + Q(2, 9)));
}

TEST_CASE("invariant_basis examples") {
    StateSpace e7 = state_space_J("x^3+x*y^3");
    const Sector& id7 = e7.sectors[e7.sector_index(group_identity(2))];
    CHECK(id7.invariants == std::vector<Monomial>{{0, 2}});

    for (int n = 3; n <= 8; ++n) {
        StateSpace dmax = state_space_max("x^" + std::to_string(n) + "+x*y^2");
        const Sector& id = dmax.sectors[dmax.sector_index(group_identity(2))];
        CHECK(id.invariants == std::vector<Monomial>{{0, 1}});
    }
    for (int n : {3, 5, 7, 9}) {
        StateSpace dj = state_space_J("x^" + std::to_string(n) + "+x*y^2");
        const Sector& id = dj.sectors[dj.sector_index(group_identity(2))];
        std::vector<Monomial> want = {{(n - 1) / 2, 0}, {0, 1}};
        std::vector<Monomial> got = id.invariants;
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        CHECK(got == want);
    }
}

TEST_CASE("build_state_space examples") {
    StateSpace e7 = state_space_J("x^3+x*y^3");
    CHECK(e7.dim() == 7);
    std::vector<Rational> deg = e7.degrees;
    std::sort(deg.begin(), deg.end());
    CHECK(deg == std::vector<Rational>{0, Q(4, 9), Q(2, 3), Q(8, 9), Q(10, 9), Q(4, 3), Q(16, 9)});
    size_t y2 = static_cast<size_t>(e7.find_class(group_identity(2), {0, 2}));
    CHECK(e7.eta[y2][y2] == Q(-1, 3));
    CHECK(e7.degrees[e7.unit] == 0);

    for (int n = 3; n <= 8; ++n) {
        StateSpace dt = state_space_max("x^" + std::to_string(n) + "*y+y^2");
        CHECK(dt.dim() == size_t(n + 1));
        CHECK(dt.find_class(group_identity(2), {n - 1, 0}) >= 0);
        GroupElement l = {Q(1, 2 * n), Q(1, 2)};
        for (int k = 1; k < 2 * n; k += 2)
            CHECK(dt.find_class(group_power(l, k), {}) >= 0);
    }
    std::string kind;
    try {
        QSingularity s = singularity_from_text("x^3+x*y^3");
        SymmetryGroup trivial;
        trivial.elements = {group_identity(2)};
        build_state_space(s, trivial);
    } catch (const Error& e) {
        kind = e.kind();
    }
    CHECK(kind == "MissingJ");
}

TEST_CASE("tensor_state_space examples") {
    StateSpace a2 = state_space_max("x^3");
    StateSpace a3 = state_space_max("y^4");
    StateSpace t = tensor_state_space(a2, a3);
    CHECK(t.dim() == 6);
    CHECK(t.dim() == state_space_max("x^3+y^4").dim());
    StateSpace a4 = state_space_max("y^5");
    CHECK(tensor_state_space(a2, a4).dim() == 8);
    CHECK(tensor_state_space(a2, a4).dim() == state_space_max("x^3+y^5").dim());
    StateSpace a1 = state_space_max("z^2");
    StateSpace e7 = state_space_J("x^3+x*y^3");
    CHECK(tensor_state_space(e7, a1).dim() == e7.dim());
    std::string kind;
    try {
        tensor_state_space(a2, state_space_max("x^4"));
    } catch (const Error& e) {
        kind = e.kind();
    }
    CHECK(kind == "VariableCollision");
}

TEST_CASE("tensor sectors have additive iota and multiplicative pairing") {
    StateSpace a2 = state_space_max("x^3");
    StateSpace a3 = state_space_max("y^4");
    StateSpace t = tensor_state_space(a2, a3);
    REQUIRE(t.tensor_factors.size() == t.dim());
    for (size_t i = 0; i < t.dim(); ++i) {
        auto [i1, i2] = t.tensor_factors[i];
        CHECK(t.degrees[i] == a2.degrees[i1] + a3.degrees[i2]);
        for (size_t j = 0; j < t.dim(); ++j) {
            auto [j1, j2] = t.tensor_factors[j];
            CHECK(t.eta[i][j] == a2.eta[i1][j1] * a3.eta[i2][j2]);
        }
    }
}

TEST_CASE("iota relation over all case groups") {
    for (const StateSpace& H : case_spaces()) {
        const QSingularity& s = H.singularity;
        for (const auto& sec : H.sectors) {
            const Sector& inv = H.sectors[H.sector_index(group_inverse(sec.gamma))];
            CHECK(sec.iota + inv.iota == s.c_hat - Rational(static_cast<long>(sec.N_gamma)));
            CHECK(sec.deg_W == Rational(static_cast<long>(sec.N_gamma)) + 2 * sec.iota);
        }
        CHECK(H.sectors[H.sector_index(exponential_grading_element(s))].iota == 0);
    }
}

TEST_CASE("pairing is symmetric, nondegenerate and degree complementary") {
    for (const StateSpace& H : case_spaces()) {
        Matrix inv;
        CHECK(invert(H.eta, inv));
        for (size_t i = 0; i < H.dim(); ++i)
            for (size_t j = 0; j < H.dim(); ++j) {
                CHECK(H.eta[i][j] == H.eta[j][i]);
                if (H.eta[i][j] != 0) {
                    CHECK(H.degrees[i] + H.degrees[j] == 2 * H.singularity.c_hat);
                    CHECK(H.sectors[H.basis[j].sector].gamma ==
                          group_inverse(H.sectors[H.basis[i].sector].gamma));
                }
            }
    }
}

TEST_CASE("maximal-group state spaces have the mirror Milnor number") {
    CHECK(state_space_max("x^3+x*y^3").dim() == 7);
    CHECK(state_space_max("x^3+y^4").dim() == 6);
    CHECK(state_space_max("x^3+y^5").dim() == 8);
    for (int n = 2; n <= 9; ++n) {
        std::string xn = "x^" + std::to_string(n);
        // D_{n+1} <-> D^T_{n+1}.
        CHECK(state_space_max(xn + "+x*y^2").dim() == size_t(singularity_from_text(xn + "*y+y^2").mu));
        CHECK(state_space_max(xn + "*y+y^2").dim() == size_t(singularity_from_text(xn + "+x*y^2").mu));
    }
}
