#include "qsing/moduli.hpp"
#include "qsing/error.hpp"

#include <algorithm>
#include <array>

namespace qsing {

std::vector<Rational> bundle_degrees(const QSingularity& s, const CorrelatorFrame& frame) {
    long k = static_cast<long>(frame.insertions.size());
    std::vector<Rational> deg(s.nvars());
    for (size_t j = 0; j < s.nvars(); ++j) {
        Rational d = s.q[j] * (2 * frame.genus - 2 + k);
        for (const auto& g : frame.insertions)
            d -= g[j];
        deg[j] = d;
    }
    return deg;
}

CorrelatorFrame make_frame(const QSingularity& s, int genus, const std::vector<GroupElement>& insertions) {
    CorrelatorFrame f;
    f.genus = genus;
    f.insertions = insertions;
    f.bundle_degrees = bundle_degrees(s, f);
    f.nonempty = std::all_of(f.bundle_degrees.begin(), f.bundle_degrees.end(),
                             [](const Rational& r) { return is_integer(r); });
    return f;
}

bool selection_rule(const QSingularity& s, const CorrelatorFrame& frame) {
    for (const auto& d : bundle_degrees(s, frame))
        if (!is_integer(d))
            return false;
    return true;
}

bool group_rule(const QSingularity& s, const CorrelatorFrame& frame) {
    GroupElement product = group_identity(s.nvars());
    for (const auto& g : frame.insertions)
        product = group_add(product, g);
    long k = static_cast<long>(frame.insertions.size());
    return product == group_power(exponential_grading_element(s), 2 * frame.genus - 2 + k);
}

std::vector<BoundaryChannel> boundary_node_decorations(const QSingularity& s, const SymmetryGroup& G,
                                                       const CorrelatorFrame& frame) {
    if (frame.genus != 0 || frame.insertions.size() != 4)
        fail("InvalidFrame", "boundary decorations are defined for genus-zero four-point frames");
    const std::array<std::array<size_t, 4>, 3> partitions = {{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
    GroupElement J = exponential_grading_element(s);
    std::vector<BoundaryChannel> out;
    std::vector<std::pair<std::vector<GroupElement>, GroupElement>> keys;
    for (const auto& p : partitions) {
        BoundaryChannel ch;
        ch.left = {p[0], p[1]};
        ch.right = {p[2], p[3]};
        ch.node = group_add(J, group_inverse(group_add(frame.insertions[p[0]], frame.insertions[p[1]])));
        if (!G.contains(ch.node))
            fail("NodeNotInGroup", "node decoration " + render_element(ch.node) + " is not in G");
        std::vector<GroupElement> l = {frame.insertions[p[0]], frame.insertions[p[1]]};
        std::vector<GroupElement> r = {frame.insertions[p[2]], frame.insertions[p[3]]};
        std::sort(l.begin(), l.end());
        std::sort(r.begin(), r.end());
        GroupElement node = ch.node;
        if (r < l) {
            std::swap(l, r);
            node = group_inverse(node);
        }
        l.insert(l.end(), r.begin(), r.end());
        bool merged = false;
        for (size_t i = 0; i < keys.size(); ++i)
            if (keys[i].first == l && keys[i].second == node) {
                ++out[i].multiplicity;
                merged = true;
                break;
            }
        if (!merged) {
            keys.emplace_back(l, node);
            out.push_back(ch);
        }
    }
    return out;
}

std::string to_string(Concavity c) {
    switch (c) {
    case Concavity::Concave: return "Concave";
    case Concavity::IndexZero: return "IndexZero";
    case Concavity::Ramond: return "Ramond";
    case Concavity::Other: return "Other";
    }
    return "Other";
}

namespace {

// Genus-zero four-point frames: pushforward must also vanish on the boundary fibres. Each
// component carries two marks and the node; an NS node vanishes on both sides, a Ramond node
// (Theta = 0) glues sections, so h0 = 0 iff one side has degree <= -1 and the other <= 0.
bool boundary_concave(const QSingularity& s, const CorrelatorFrame& frame) {
    if (frame.genus != 0 || frame.insertions.size() != 4)
        return true;
    const std::array<std::array<size_t, 4>, 3> partitions = {{{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}}};
    const auto& ins = frame.insertions;
    for (const auto& p : partitions)
        for (size_t j = 0; j < s.nvars(); ++j) {
            Rational node = frac(s.q[j] - ins[p[0]][j] - ins[p[1]][j]);
            Rational left = s.q[j] - ins[p[0]][j] - ins[p[1]][j];
            Rational right = s.q[j] - ins[p[2]][j] - ins[p[3]][j];
            if (sgn(node) != 0) {
                left -= node;
                right -= 1 - node;
                if (left > -1 || right > -1)
                    return false;
            } else if (!((left <= -1 && right <= 0) || (right <= -1 && left <= 0))) {
                return false;
            }
        }
    return true;
}

} // namespace

Concavity classify_concavity(const QSingularity& s, const CorrelatorFrame& frame) {
    for (const auto& g : frame.insertions)
        for (const auto& t : g)
            if (sgn(t) == 0)
                return Concavity::Ramond;
    std::vector<Rational> deg = bundle_degrees(s, frame);
    bool all_negative = std::all_of(deg.begin(), deg.end(), [](const Rational& d) { return d <= -1; });
    if (all_negative)
        return boundary_concave(s, frame) ? Concavity::Concave : Concavity::Other;
    // Genus zero: h0 - h1 = sum_j (deg_j + 1); index zero with a nontrivial section space.
    if (frame.genus == 0) {
        Rational index = 0;
        bool some_sections = false;
        for (const auto& d : deg) {
            index += d + 1;
            if (d >= 0)
                some_sections = true;
        }
        if (sgn(index) == 0 && some_sections)
            return Concavity::IndexZero;
    }
    return Concavity::Other;
}

Rational stabilization_degree(size_t group_order, int genus, std::optional<std::pair<EdgeKind, long>> edge) {
    Rational G(static_cast<long>(group_order));
    if (!edge)
        return rational_pow(G, 2 * genus - 1);
    Rational m(edge->second);
    if (edge->first == EdgeKind::Tree)
        return rational_pow(G, 2 * genus - 1) / m;
    return rational_pow(G, 2 * genus - 2) / m;
}

} // namespace qsing
