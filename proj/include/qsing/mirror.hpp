#pragma once

#include "qsing/correlator.hpp"
#include "qsing/milnor.hpp"
#include "qsing/saito.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qsing {

struct MirrorIso {
    std::vector<Vector> generator_images;  // per B variable, coordinates in the A basis
    std::vector<Monomial> b_basis;
    Matrix P;                              // column j: image of b_basis[j]
    Rational rho;                          // eta_A(phi f, phi g) = rho * Res_B(f g)
    std::string scaling_condition;         // symbolic, e.g. "alpha^8 = 1/9"
};

// Image of a B monomial under the algebra map fixed by the generator images.
Vector image_of_monomial(const FrobeniusAlgebra& A, const std::vector<Vector>& images, const Monomial& m);

// Errors: RelationFails, DimensionMismatch, GradingMismatch, NonUniformPairingRatio.
MirrorIso verify_ring_isomorphism(const FrobeniusAlgebra& A, const MilnorRing& B, const std::vector<Vector>& images);

struct PotentialMatch {
    Rational lambda;
    bool verified = false;
    size_t cubic_terms = 0;
    size_t quartic_terms = 0;  // B-side quartic coefficients compared
};

// identification[i] = B coordinate of A coordinate i. Checks F3 equality, then finds the unique
// lambda with F4^A = lambda F4^B (on the B support when the B quartic is partial).
// Errors: CubicMismatch, QuarticNotProportional, DimensionMismatch.
PotentialMatch match_potentials(const PotentialSeries& A, const BPotential& B,
                                const std::vector<size_t>& identification);

// ---- Named cases ----

// scalar * (monomial in the fixed variables) * e_power, with e_k the sector of generator^k.
struct ClassRef {
    Rational scalar = 1;
    long power = 0;
    Monomial monomial;  // over all variables of W
};

struct MirrorCase {
    std::string name;
    std::string a_poly;
    std::string group;              // "J" or "max"
    GroupElement generator;         // labels e_k = generator^k
    std::string b_poly;
    std::vector<std::string> b_vars;
    std::vector<ClassRef> images;   // per B variable
    // Last generator given as scalar * (image of the first generator)^power instead of a class.
    std::optional<std::pair<Rational, long>> last_from_first;
    std::vector<ClassRef> printed_images;  // displayed images when they differ; checked separately
    std::string scaling_condition;
    // Potential comparison against a Saito family.
    std::optional<Family> b_family;
    int b_n = 0;
    Rational b_scale = 1;             // relative to the family's base form
    bool family_is_b_ring = true;     // otherwise the family variable is the first B generator
    std::optional<Rational> expected_lambda;
    std::optional<Rational> expected_basic;  // the displayed basic four-point value
    std::vector<size_t> basic_key;        // its insertions, in family coordinates
    std::vector<ClassRef> sector_basic;   // the same basic read on bare sector classes, when it differs
};

// Tags: "A:n", "D:n" (maximal group), "D:n:J" (n odd), "DT:n", "E6", "E7", "E8". Errors: UnknownFamily.
MirrorCase mirror_case(const std::string& tag);

struct CaseRun {
    MirrorCase spec;
    StateSpace H;
    FrobeniusAlgebra algebra;
    MirrorIso iso;
    FrobeniusAlgebra transported;   // family coordinates
    Matrix family_P;
    FourPointSolution four;
    std::optional<PotentialSeries> a_potential;
    std::optional<BPotential> b_potential;
    std::optional<PotentialMatch> match;
    std::optional<Rational> basic_value;
    std::optional<Rational> sector_basic_value;
    std::string printed_iso_error;  // outcome of checking printed_images, empty when they pass
    std::string error_kind;         // set when the isomorphism or potential stage failed
    std::string error_message;
};

CaseRun run_mirror_case(const MirrorCase& spec, const EvalOptions& options = {});
// Basis vector of a class reference in H.
Vector resolve_class(const StateSpace& H, const GroupElement& generator, const ClassRef& ref);

} // namespace qsing
