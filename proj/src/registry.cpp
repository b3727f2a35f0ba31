#include "qsing/correlator.hpp"
#include "qsing/error.hpp"

namespace qsing {

namespace {

bool is_e7(const Poly& W) {
    return W.nvars() == 2 && W.size() == 2 && W.coeff({3, 0}) == 1 && W.coeff({1, 3}) == 1;
}

// x^n + x y^2 with n >= 2.
bool is_d_family(const Poly& W) {
    if (W.nvars() != 2 || W.size() != 2 || W.coeff({1, 2}) != 1)
        return false;
    for (const auto& [m, c] : W.terms())
        if (m[1] == 0 && m[0] >= 2 && c == 1)
            return true;
    return false;
}

bool degrees_are(const CorrelatorFrame& f, long a, long b) {
    return f.bundle_degrees.size() == 2 && f.bundle_degrees[0] == a && f.bundle_degrees[1] == b;
}

} // namespace

long witten_degree_lookup(const QSingularity& s, const CorrelatorFrame& frame) {
    if (frame.genus == 0 && classify_concavity(s, frame) == Concavity::IndexZero && degrees_are(frame, -2, 0)) {
        if (is_e7(s.W))
            return -3;  // Witten map (3 xbar^2 + ybar^3, 2 xbar ybar)
        if (is_d_family(s.W))
            return -2;  // (n xbar^(n-1) + ybar^2, 2 xbar ybar)
    }
    fail("NotInRegistry", "no Witten-map degree registered for this frame");
}

std::string witten_registry_description(const QSingularity& s, const CorrelatorFrame& frame) {
    if (is_e7(s.W) && degrees_are(frame, -2, 0))
        return "E7 Witten map (3x^2+y^3, 2xy): degree -3";
    if (is_d_family(s.W) && degrees_are(frame, -2, 0))
        return "D Witten map (n x^(n-1)+y^2, 2xy): degree -2";
    return "";
}

std::optional<Monomial> ramond_gauge_axis(const QSingularity& s, const Sector& sector) {
    if (is_d_family(s.W) && sector.N_gamma == 2) {
        Monomial y = {0, 1};
        for (const auto& m : sector.invariants)
            if (m == y)
                return y;
    }
    return std::nullopt;
}

} // namespace qsing
