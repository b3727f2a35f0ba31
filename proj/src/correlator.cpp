#include "qsing/correlator.hpp"
#include "qsing/error.hpp"

#include <algorithm>

namespace qsing {

std::optional<CorrelatorEntry> CorrelatorTable::get(int genus, std::vector<size_t> insertions) const {
    std::sort(insertions.begin(), insertions.end());
    auto it = entries_.find({genus, insertions});
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

void CorrelatorTable::put(int genus, std::vector<size_t> insertions, CorrelatorEntry entry) {
    std::sort(insertions.begin(), insertions.end());
    entries_[{genus, insertions}] = std::move(entry);
}

namespace {

Rational theta_term(const Rational& theta) {
    return Rational(1, 12) - theta * (1 - theta) / 2;
}

} // namespace

std::vector<Rational> ogrr_line_contributions(const QSingularity& s, const SymmetryGroup& G,
                                              const CorrelatorFrame& frame) {
    if (frame.genus != 0 || frame.insertions.size() != 4 || !frame.nonempty ||
        classify_concavity(s, frame) != Concavity::Concave)
        fail("NotConcave", "frame is not a concave genus-zero four-point frame");
    std::vector<BoundaryChannel> channels = boundary_node_decorations(s, G, frame);
    std::vector<Rational> out;
    for (size_t l = 0; l < s.nvars(); ++l) {
        const Rational& q = s.q[l];
        Rational v = q * q / 2 - q / 2 + Rational(1, 12);
        for (const auto& g : frame.insertions)
            v -= theta_term(g[l]);
        for (const auto& ch : channels)
            v += ch.multiplicity * theta_term(ch.node[l]);
        out.push_back(v);
    }
    return out;
}

Rational four_point_ogrr(const QSingularity& s, const SymmetryGroup& G, const CorrelatorFrame& frame) {
    Rational total = 0;
    for (const auto& v : ogrr_line_contributions(s, G, frame))
        total += v;
    return total;
}

std::vector<Rational> solve_ramond_three_point(const StateSpace& H, const Rational& boundary_value,
                                               size_t node_sector, int gauge_sign) {
    std::vector<size_t> classes = H.classes_in_sector(node_sector);
    if (classes.empty())
        fail("Underdetermined", "node sector has no invariant classes");
    size_t pick = classes.size();
    if (classes.size() == 1) {
        pick = 0;
    } else {
        auto axis = ramond_gauge_axis(H.singularity, H.sectors[node_sector]);
        if (!axis)
            fail("Underdetermined", "several unknown three-point values and no registered gauge");
        for (size_t i = 0; i < classes.size(); ++i)
            if (H.basis[classes[i]].monomial == *axis)
                pick = i;
        if (pick == classes.size())
            fail("Underdetermined", "gauge class not present in the node sector");
    }
    const Rational& weight = H.eta_inv[classes[pick]][classes[pick]];
    if (sgn(weight) == 0)
        fail("Underdetermined", "gauge class has zero inverse pairing");
    Rational square = boundary_value / weight, root;
    if (!rational_sqrt(square, root))
        fail("NoRationalRoot", "composition equation has no rational solution: u^2 = " + to_string(square));
    std::vector<Rational> u(classes.size(), Rational(0));
    u[pick] = gauge_sign * root;
    return u;
}

AModel::AModel(StateSpace H, EvalOptions options) : H_(std::move(H)), options_(options) {}

CorrelatorFrame AModel::frame_of(const std::vector<size_t>& insertions) const {
    std::vector<GroupElement> gammas;
    for (size_t i : insertions)
        gammas.push_back(H_.sector_of(i).gamma);
    return make_frame(H_.singularity, 0, gammas);
}

CorrelatorEntry AModel::three_point(size_t a, size_t b, size_t c) {
    std::vector<size_t> key = {a, b, c};
    std::sort(key.begin(), key.end());
    if (auto hit = table_.get(0, key))
        return *hit;
    const QSingularity& s = H_.singularity;
    CorrelatorEntry result;
    Rational degree = H_.degrees[a] + H_.degrees[b] + H_.degrees[c];
    CorrelatorFrame frame = frame_of(key);
    if (degree != 2 * s.c_hat) {
        result = {0, "dimension-zero"};
    } else if (!group_rule(s, frame)) {
        result = {0, "selection"};
    } else if (std::find(key.begin(), key.end(), H_.unit) != key.end()) {
        std::vector<size_t> rest = key;
        rest.erase(std::find(rest.begin(), rest.end(), H_.unit));
        result = {H_.eta[rest[0]][rest[1]], "pairing"};
    } else {
        Concavity kind = classify_concavity(s, frame);
        if (kind == Concavity::Concave) {
            bool all_minus_one = std::all_of(frame.bundle_degrees.begin(), frame.bundle_degrees.end(),
                                             [](const Rational& d) { return d == -1; });
            if (!all_minus_one)
                fail("Unevaluable", "concave three-point frame with a line of degree below -1");
            result = {1, "concave"};
        } else if (kind == Concavity::IndexZero) {
            result = {Rational(witten_degree_lookup(s, frame)), "index-zero-registry"};
        } else if (kind == Concavity::Ramond) {
            return solve_composition({key[0], key[1], key[2]});
        } else {
            fail("Unevaluable", "three-point frame outside the supported rules");
        }
    }
    table_.put(0, key, result);
    return result;
}

CorrelatorEntry AModel::solve_composition(const std::array<size_t, 3>& key) {
    const QSingularity& s = H_.singularity;
    std::vector<size_t> ns, ramond;
    for (size_t i : key)
        (H_.sector_of(i).is_ramond ? ramond : ns).push_back(i);
    if (ramond.size() != 1)
        fail("Unevaluable", "composition solving needs exactly one Ramond insertion");
    size_t a = ns[0], b = ns[1];
    size_t node_sector = H_.basis[ramond[0]].sector;
    const GroupElement& sigma = H_.sectors[node_sector].gamma;
    if (group_inverse(sigma) != sigma)
        fail("Unevaluable", "Ramond node sector is not self-dual");
    CorrelatorFrame four = frame_of({a, b, a, b});
    if (!four.nonempty || classify_concavity(s, four) != Concavity::IndexZero)
        fail("Unevaluable", "auxiliary four-point frame is not index zero");
    long boundary;
    try {
        boundary = witten_degree_lookup(s, four);
    } catch (const Error& e) {
        fail("Unevaluable", std::string("auxiliary four-point frame: ") + e.what());
    }
    std::vector<Rational> u = solve_ramond_three_point(H_, Rational(boundary), node_sector, options_.gauge_sign);
    std::vector<size_t> classes = H_.classes_in_sector(node_sector);
    CorrelatorEntry wanted;
    for (size_t i = 0; i < classes.size(); ++i) {
        CorrelatorEntry e{u[i], "composition-solve"};
        table_.put(0, {a, b, classes[i]}, e);
        if (classes[i] == ramond[0])
            wanted = e;
    }
    return wanted;
}

CorrelatorEntry AModel::four_point(std::array<size_t, 4> ins) {
    std::vector<size_t> key(ins.begin(), ins.end());
    std::sort(key.begin(), key.end());
    if (auto hit = table_.get(0, key))
        return *hit;
    const QSingularity& s = H_.singularity;
    Rational degree = 0;
    for (size_t i : key)
        degree += H_.degrees[i];
    CorrelatorFrame frame = frame_of(key);
    CorrelatorEntry result;
    if (degree != 2 * (s.c_hat + 1)) {
        result = {0, "dimension-zero"};
    } else if (!group_rule(s, frame)) {
        result = {0, "selection"};
    } else if (std::find(key.begin(), key.end(), H_.unit) != key.end()) {
        result = {0, "forgetting-tails"};
    } else if (classify_concavity(s, frame) == Concavity::Concave) {
        result = {four_point_ogrr(s, H_.group, frame), "oGRR"};
    } else {
        fail("Unevaluable", "four-point frame is " + to_string(classify_concavity(s, frame)) +
                                "; no direct rule applies");
    }
    table_.put(0, key, result);
    return result;
}

Vector FrobeniusAlgebra::unit_vector(size_t i) const {
    Vector v(dim(), Rational(0));
    v[i] = 1;
    return v;
}

Vector FrobeniusAlgebra::basis_product(size_t i, size_t j) const {
    size_t n = dim();
    Vector out(n, Rational(0));
    for (size_t m = 0; m < n; ++m) {
        const Rational& v = c3(i, j, m);
        if (sgn(v) == 0)
            continue;
        for (size_t k = 0; k < n; ++k)
            if (sgn(eta_inv[m][k]) != 0)
                out[k] += v * eta_inv[m][k];
    }
    return out;
}

Vector FrobeniusAlgebra::multiply(const Vector& a, const Vector& b) const {
    size_t n = dim();
    Vector out(n, Rational(0));
    for (size_t i = 0; i < n; ++i) {
        if (sgn(a[i]) == 0)
            continue;
        for (size_t j = 0; j < n; ++j) {
            if (sgn(b[j]) == 0)
                continue;
            Vector p = basis_product(i, j);
            for (size_t k = 0; k < n; ++k)
                out[k] += a[i] * b[j] * p[k];
        }
    }
    return out;
}

Rational FrobeniusAlgebra::pair(const Vector& a, const Vector& b) const {
    Rational r = 0;
    for (size_t i = 0; i < dim(); ++i)
        for (size_t j = 0; j < dim(); ++j)
            r += a[i] * eta[i][j] * b[j];
    return r;
}

bool FrobeniusAlgebra::is_associative() const {
    size_t n = dim();
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k) {
                Vector left = multiply(basis_product(i, j), unit_vector(k));
                Vector right = multiply(unit_vector(i), basis_product(j, k));
                if (left != right)
                    return false;
            }
    return true;
}

FrobeniusAlgebra frobenius_algebra(AModel& model) {
    const StateSpace& H = model.state_space();
    FrobeniusAlgebra alg;
    size_t n = H.dim();
    for (const auto& b : H.basis)
        alg.labels.push_back(b.label);
    alg.degrees = H.degrees;
    alg.c_hat = H.singularity.c_hat;
    alg.grade_scale = 2;
    alg.eta = H.eta;
    alg.eta_inv = H.eta_inv;
    alg.unit = H.unit;
    alg.c.assign(n * n * n, Rational(0));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i; j < n; ++j)
            for (size_t k = j; k < n; ++k) {
                Rational v = model.three_point(i, j, k).value;
                size_t idx[3] = {i, j, k};
                std::sort(idx, idx + 3);
                do {
                    alg.c[(idx[0] * n + idx[1]) * n + idx[2]] = v;
                } while (std::next_permutation(idx, idx + 3));
            }
    return alg;
}

FrobeniusAlgebra transport(const FrobeniusAlgebra& alg, const Matrix& P, std::vector<std::string> labels) {
    size_t n = alg.dim();
    FrobeniusAlgebra out;
    out.labels = std::move(labels);
    out.c_hat = alg.c_hat;
    out.grade_scale = alg.grade_scale;
    Matrix PT = transpose(P);
    out.eta = multiply(multiply(PT, alg.eta), P);
    if (!invert(out.eta, out.eta_inv))
        fail("DimensionMismatch", "transported pairing is degenerate");
    out.degrees.assign(n, Rational(0));
    bool unit_found = false;
    for (size_t a = 0; a < n; ++a) {
        bool seen = false;
        for (size_t i = 0; i < n; ++i) {
            if (sgn(P[i][a]) == 0)
                continue;
            if (seen && alg.degrees[i] != out.degrees[a])
                fail("GradingMismatch", "basis vector '" + out.labels[a] + "' is not homogeneous");
            out.degrees[a] = alg.degrees[i];
            seen = true;
        }
        Vector col(n);
        for (size_t i = 0; i < n; ++i)
            col[i] = P[i][a];
        if (col == alg.unit_vector(alg.unit)) {
            out.unit = a;
            unit_found = true;
        }
    }
    if (!unit_found)
        fail("DimensionMismatch", "the transported basis does not contain the unit");
    // Contract one index at a time: c'_{abc} = sum P_ia P_jb P_kc c_ijk.
    std::vector<Rational> t1(n * n * n, Rational(0)), t2(n * n * n, Rational(0));
    for (size_t a = 0; a < n; ++a)
        for (size_t i = 0; i < n; ++i) {
            if (sgn(P[i][a]) == 0)
                continue;
            for (size_t j = 0; j < n; ++j)
                for (size_t k = 0; k < n; ++k)
                    t1[(a * n + j) * n + k] += P[i][a] * alg.c3(i, j, k);
        }
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t j = 0; j < n; ++j) {
                if (sgn(P[j][b]) == 0)
                    continue;
                for (size_t k = 0; k < n; ++k)
                    t2[(a * n + b) * n + k] += P[j][b] * t1[(a * n + j) * n + k];
            }
    out.c.assign(n * n * n, Rational(0));
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b)
            for (size_t c = 0; c < n; ++c)
                for (size_t k = 0; k < n; ++k)
                    if (sgn(P[k][c]) != 0)
                        out.c[(a * n + b) * n + c] += P[k][c] * t2[(a * n + b) * n + k];
    return out;
}

} // namespace qsing
