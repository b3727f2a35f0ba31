#pragma once

#include "qsing/singular.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace qsing {

struct CorrelatorFrame {
    int genus = 0;
    std::vector<GroupElement> insertions;
    std::vector<Rational> bundle_degrees;  // deg |L_j| per variable
    bool nonempty = false;                  // all degrees integral
};

CorrelatorFrame make_frame(const QSingularity& s, int genus, const std::vector<GroupElement>& insertions);

// deg|L_j| = q_j (2g - 2 + k) - sum_l Theta_j(gamma_l).
std::vector<Rational> bundle_degrees(const QSingularity& s, const CorrelatorFrame& frame);
// Integrality of every degree; equivalently prod gamma_i = J^(2g-2+k).
bool selection_rule(const QSingularity& s, const CorrelatorFrame& frame);
bool group_rule(const QSingularity& s, const CorrelatorFrame& frame);

struct BoundaryChannel {
    std::array<size_t, 2> left;   // insertion positions on the first component
    std::array<size_t, 2> right;
    GroupElement node;            // half-edge on the left component: q - Theta_a - Theta_b
    int multiplicity = 1;
};

// Genus-zero four-point frames only; errors NodeNotInGroup.
std::vector<BoundaryChannel> boundary_node_decorations(const QSingularity& s, const SymmetryGroup& G,
                                                       const CorrelatorFrame& frame);

enum class Concavity { Concave, IndexZero, Ramond, Other };
std::string to_string(Concavity c);

Concavity classify_concavity(const QSingularity& s, const CorrelatorFrame& frame);

enum class EdgeKind { Tree, Loop };

// |G|^(2g-1) with no edge; |G|^(2g-1)/|<gamma>| on a separating edge; |G|^(2g-2)/|<gamma>| on a loop.
Rational stabilization_degree(size_t group_order, int genus,
                              std::optional<std::pair<EdgeKind, long>> edge = std::nullopt);

} // namespace qsing
