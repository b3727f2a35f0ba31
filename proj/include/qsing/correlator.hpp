#pragma once

#include "qsing/moduli.hpp"
#include "qsing/statespace.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qsing {

struct CorrelatorEntry {
    Rational value;
    std::string provenance;
};

// Memoized (genus, sorted multiset of basis indices) -> value. Single-writer.
class CorrelatorTable {
public:
    using Key = std::pair<int, std::vector<size_t>>;

    std::optional<CorrelatorEntry> get(int genus, std::vector<size_t> insertions) const;
    void put(int genus, std::vector<size_t> insertions, CorrelatorEntry entry);
    const std::map<Key, CorrelatorEntry>& entries() const { return entries_; }
    size_t size() const { return entries_.size(); }

private:
    std::map<Key, CorrelatorEntry> entries_;
};

// ---- Index-zero registry ----

// Degree of the Witten map for registered frames. Errors: NotInRegistry.
long witten_degree_lookup(const QSingularity& s, const CorrelatorFrame& frame);
std::string witten_registry_description(const QSingularity& s, const CorrelatorFrame& frame);

// Gauge for multi-dimensional Ramond unknowns: the solution is placed on this monomial class.
std::optional<Monomial> ramond_gauge_axis(const QSingularity& s, const Sector& sector);

// ---- Three- and four-point rules ----

struct EvalOptions {
    int gauge_sign = 1;  // branch of every square root in composition solves
};

// Per-line terms of the concave codimension-one formula; their sum is the correlator.
std::vector<Rational> ogrr_line_contributions(const QSingularity& s, const SymmetryGroup& G,
                                              const CorrelatorFrame& frame);
// Errors: NotConcave.
Rational four_point_ogrr(const QSingularity& s, const SymmetryGroup& G, const CorrelatorFrame& frame);

// Solves sum_{mu,nu} u_mu eta^{mu nu} u_nu = boundary_value over the classes of one Ramond sector.
// Errors: Underdetermined (several unknowns without a gauge), NoRationalRoot.
std::vector<Rational> solve_ramond_three_point(const StateSpace& H, const Rational& boundary_value,
                                               size_t node_sector, int gauge_sign);

class AModel {
public:
    explicit AModel(StateSpace H, EvalOptions options = {});

    const StateSpace& state_space() const { return H_; }
    const EvalOptions& options() const { return options_; }

    // Errors: Unevaluable.
    CorrelatorEntry three_point(size_t a, size_t b, size_t c);
    // Direct rules only (dimension, group, forgetting tails, oGRR). Errors: Unevaluable.
    CorrelatorEntry four_point(std::array<size_t, 4> insertions);

    CorrelatorFrame frame_of(const std::vector<size_t>& insertions) const;
    const CorrelatorTable& table() const { return table_; }

private:
    CorrelatorEntry solve_composition(const std::array<size_t, 3>& key);

    StateSpace H_;
    EvalOptions options_;
    CorrelatorTable table_;
};

// ---- Frobenius algebras ----

struct FrobeniusAlgebra {
    std::vector<std::string> labels;
    std::vector<Rational> degrees;
    Rational c_hat;
    Rational grade_scale = 2;  // 2 for deg_W gradings, 1 for deg_C
    Matrix eta;
    Matrix eta_inv;
    std::vector<Rational> c;   // c[(i*n+j)*n+k] = <e_i,e_j,e_k>
    size_t unit = 0;

    size_t dim() const { return labels.size(); }
    const Rational& c3(size_t i, size_t j, size_t k) const { return c[(i * dim() + j) * dim() + k]; }
    Vector basis_product(size_t i, size_t j) const;
    Vector multiply(const Vector& a, const Vector& b) const;
    Rational pair(const Vector& a, const Vector& b) const;
    Vector unit_vector(size_t i) const;
    bool is_associative() const;
    // Sum of degrees a nonzero genus-zero k-point correlator must have.
    Rational dimension_target(size_t k) const { return grade_scale * (c_hat + Rational(static_cast<long>(k)) - 3); }
};

FrobeniusAlgebra frobenius_algebra(AModel& model);
// New basis vectors are the columns of P (coordinates in the old basis).
FrobeniusAlgebra transport(const FrobeniusAlgebra& alg, const Matrix& P, std::vector<std::string> labels);

// ---- WDVV reconstruction in a monomial presentation ----

struct MonomialPresentation {
    std::vector<Monomial> exponents;  // per basis element, exponents in the primitive generators
    bool is_primitive(size_t i) const { return total_degree(exponents[i]) == 1; }
    bool is_unit(size_t i) const { return total_degree(exponents[i]) == 0; }
    long index_of(const Monomial& m) const;
};

class WdvvEngine {
public:
    // seed: when set, factorization choices are randomized (for path-independence checks).
    WdvvEngine(FrobeniusAlgebra alg, MonomialPresentation presentation, CorrelatorTable basics,
               std::optional<uint64_t> seed = std::nullopt);

    // Genus-zero correlator of basis elements, k >= 3. Errors: MissingBasic.
    Rational correlator(std::vector<size_t> insertions);
    const FrobeniusAlgebra& algebra() const { return alg_; }
    const MonomialPresentation& presentation() const { return pres_; }
    size_t memo_size() const { return memo_.size(); }

private:
    Rational reconstruct(const std::vector<size_t>& key);
    Rational evaluate_terms(const std::vector<size_t>& gamma, size_t alpha, size_t beta, size_t eps, size_t phi);

    FrobeniusAlgebra alg_;
    MonomialPresentation pres_;
    CorrelatorTable basics_;
    std::optional<uint64_t> seed_;
    uint64_t rng_state_ = 0;
    std::map<std::vector<size_t>, Rational> memo_;
    std::vector<std::vector<std::vector<std::pair<size_t, Rational>>>> products_;  // e_i * e_j, sparse
    std::vector<std::vector<std::pair<size_t, Rational>>> dual_;                   // eta^{-1} rows, sparse
};

Rational wdvv_reconstruct(const FrobeniusAlgebra& alg, const MonomialPresentation& presentation,
                          const CorrelatorTable& basics, const std::vector<size_t>& key);

// Four-point values in a transported basis: direct A-model rules where they apply, the
// homogeneous four-point WDVV relations for the rest. Undetermined keys are omitted.
struct FourPointSolution {
    CorrelatorTable values;
    std::vector<std::vector<size_t>> undetermined;
    size_t relations_used = 0;
};
// alg is the transported algebra; P maps its basis into the model basis.
FourPointSolution solve_four_point(AModel& model, const FrobeniusAlgebra& alg, const Matrix& P);

// ---- Potentials ----

struct PotentialSeries {
    int order = 3;
    std::vector<std::string> coordinates;
    std::vector<Rational> coordinate_degrees;
    std::map<Monomial, Rational> terms;

    PotentialSeries part(int k) const;
    Rational coeff(const Monomial& m) const;
};

PotentialSeries genus_zero_potential(WdvvEngine& engine, int order, std::vector<std::string> coordinates);
std::string render_potential(const PotentialSeries& p);

} // namespace qsing
