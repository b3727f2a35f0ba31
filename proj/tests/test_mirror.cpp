#include "helpers.hpp"

#include "qsing/error.hpp"
#include "qsing/mirror.hpp"

using namespace qsing;
using namespace qsing::test;

namespace {

CaseRun run(const std::string& tag) { return run_mirror_case(mirror_case(tag)); }

} // namespace

TEST_CASE("exceptional cases: isomorphism, rho and potential match") {
    struct Want {
        const char* tag;
        long rho;
        Rational basic;
    };
    for (const Want& w : {Want{"E6", 12, Q(1, 4)}, Want{"E7", 9, Q(1, 9)}, Want{"E8", 15, Q(1, 5)}}) {
        CAPTURE(w.tag);
        CaseRun r = run(w.tag);
        CHECK(r.error_kind.empty());
        CHECK(r.iso.rho == w.rho);
        REQUIRE(r.match);
        CHECK(r.match->verified);
        CHECK(r.match->lambda == -1);
        REQUIRE(r.basic_value);
        CHECK(*r.basic_value == w.basic);
        CHECK(r.spec.expected_basic == w.basic);
    }
}

TEST_CASE("A_n cases") {
    for (int n = 2; n <= 7; ++n) {
        CAPTURE(n);
        CaseRun r = run("A:" + std::to_string(n));
        CHECK(r.error_kind.empty());
        CHECK(r.iso.rho == n + 1);
        REQUIRE(r.match);
        CHECK(r.match->lambda == -1);
    }
}

TEST_CASE("D with the maximal group") {
    for (int n = 3; n <= 7; ++n) {
        CAPTURE(n);
        CaseRun r = run("D:" + std::to_string(n));
        CHECK(r.error_kind.empty());
        CHECK(r.iso.rho == 2 * n);
        REQUIRE(r.match);
        CHECK(r.match->lambda == 4);
        REQUIRE(r.sector_basic_value);
        CHECK(*r.sector_basic_value == Q(1, n));
        REQUIRE(r.basic_value);
        CHECK(*r.basic_value == Q(4, n));
        // The displayed generator images do not satisfy the B relations.
        CHECK(r.printed_iso_error.rfind("RelationFails", 0) == 0);
    }
}

TEST_CASE("D odd with the group generated by J") {
    for (int n : {5, 7, 9}) {
        CAPTURE(n);
        CaseRun r = run("D:" + std::to_string(n) + ":J");
        CHECK(r.error_kind.empty());
        CHECK(r.iso.rho == -4 * n);
        REQUIRE(r.match);
        CHECK(r.match->lambda == 4);
        REQUIRE(r.sector_basic_value);
        CHECK(*r.sector_basic_value == Q(1, n));
    }
}

TEST_CASE("D transpose cases") {
    for (int n = 3; n <= 6; ++n) {
        CAPTURE(n);
        CaseRun r = run("DT:" + std::to_string(n));
        CHECK(r.error_kind.empty());
        CHECK(r.iso.rho == 2 * n);
        REQUIRE(r.match);
        CHECK(r.match->lambda == -1);
    }
}

TEST_CASE("unknown and malformed case tags") {
    for (const char* tag : {"F4", "D:4:J", "D:2", "A:x", ""}) {
        CAPTURE(tag);
        std::string kind;
        try {
            mirror_case(tag);
        } catch (const Error& e) {
            kind = e.kind();
        }
        CHECK(!kind.empty());
    }
}

TEST_CASE("verify_ring_isomorphism rejects wrong images") {
    CaseRun r = run("E7");
    std::vector<Vector> images = r.iso.generator_images;
    std::swap(images[0], images[1]);
    MilnorRing B = milnor_basis(singularity_from_text(r.spec.b_poly, r.spec.b_vars));
    std::string kind;
    try {
        verify_ring_isomorphism(r.algebra, B, images);
    } catch (const Error& e) {
        kind = e.kind();
    }
    CHECK(!kind.empty());
    MirrorIso ok = verify_ring_isomorphism(r.algebra, B, r.iso.generator_images);
    CHECK(ok.rho == 9);
}
