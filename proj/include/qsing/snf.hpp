#pragma once

#include "qsing/rational.hpp"

#include <vector>

namespace qsing {

using IntMatrix = std::vector<std::vector<Integer>>;

struct SmithForm {
    IntMatrix V;  // s x s, unimodular
    IntMatrix T;  // s x N, diagonal with t_ll | t_{l+1,l+1}
    IntMatrix Q;  // N x N, unimodular
};

// B = V * T * Q. Pivot of minimal magnitude, ties broken by lowest row then column.
SmithForm smith_normal_form(const IntMatrix& B);

IntMatrix int_identity(size_t n);
IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b);
Integer int_determinant(const IntMatrix& a);  // Bareiss, square input

} // namespace qsing
