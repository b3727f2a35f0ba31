#include "qsing/snf.hpp"

#include <utility>

namespace qsing {

IntMatrix int_identity(size_t n) {
    IntMatrix m(n, std::vector<Integer>(n, 0));
    for (size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

IntMatrix int_multiply(const IntMatrix& a, const IntMatrix& b) {
    size_t inner = b.size();
    size_t cols = inner ? b[0].size() : 0;
    IntMatrix c(a.size(), std::vector<Integer>(cols, 0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < inner; ++k)
            for (size_t j = 0; j < cols; ++j)
                c[i][j] += a[i][k] * b[k][j];
    return c;
}

Integer int_determinant(const IntMatrix& a) {
    size_t n = a.size();
    if (n == 0)
        return 1;
    IntMatrix m = a;
    Integer prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t p = k + 1;
            while (p < n && m[p][k] == 0)
                ++p;
            if (p == n)
                return 0;
            std::swap(m[p], m[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                Integer v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m[i][j] = v;
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

namespace {

// Tracks T with B = V T Q while applying elementary row/column operations to T.
struct Reducer {
    IntMatrix V, T, Q;
    size_t s, n;

    void swap_rows(size_t i, size_t j) {
        std::swap(T[i], T[j]);
        for (size_t r = 0; r < s; ++r)
            std::swap(V[r][i], V[r][j]);
    }
    void swap_cols(size_t i, size_t j) {
        for (size_t r = 0; r < s; ++r)
            std::swap(T[r][i], T[r][j]);
        std::swap(Q[i], Q[j]);
    }
    // row_i += c * row_j
    void add_row(size_t i, size_t j, const Integer& c) {
        for (size_t col = 0; col < n; ++col)
            T[i][col] += c * T[j][col];
        for (size_t r = 0; r < s; ++r)
            V[r][j] -= c * V[r][i];
    }
    // col_i += c * col_j
    void add_col(size_t i, size_t j, const Integer& c) {
        for (size_t r = 0; r < s; ++r)
            T[r][i] += c * T[r][j];
        for (size_t col = 0; col < n; ++col)
            Q[j][col] -= c * Q[i][col];
    }
    void negate_row(size_t i) {
        for (size_t col = 0; col < n; ++col)
            T[i][col] = -T[i][col];
        for (size_t r = 0; r < s; ++r)
            V[r][i] = -V[r][i];
    }
};

} // namespace

SmithForm smith_normal_form(const IntMatrix& B) {
    Reducer R;
    R.s = B.size();
    R.n = R.s ? B[0].size() : 0;
    R.T = B;
    R.V = int_identity(R.s);
    R.Q = int_identity(R.n);
    size_t limit = std::min(R.s, R.n);
    for (size_t t = 0; t < limit; ++t) {
        while (true) {
            // Minimal-magnitude nonzero pivot in the trailing block.
            bool found = false;
            size_t pr = 0, pc = 0;
            Integer best;
            for (size_t i = t; i < R.s; ++i)
                for (size_t j = t; j < R.n; ++j) {
                    if (R.T[i][j] == 0)
                        continue;
                    Integer mag = abs(R.T[i][j]);
                    if (!found || mag < best) {
                        found = true;
                        best = mag;
                        pr = i;
                        pc = j;
                    }
                }
            if (!found)
                break;
            if (pr != t)
                R.swap_rows(pr, t);
            if (pc != t)
                R.swap_cols(pc, t);
            bool clean = true;
            for (size_t i = t + 1; i < R.s; ++i) {
                if (R.T[i][t] == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), R.T[i][t].get_mpz_t(), R.T[t][t].get_mpz_t());
                R.add_row(i, t, -q);
                if (R.T[i][t] != 0)
                    clean = false;
            }
            for (size_t j = t + 1; j < R.n; ++j) {
                if (R.T[t][j] == 0)
                    continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), R.T[t][j].get_mpz_t(), R.T[t][t].get_mpz_t());
                R.add_col(j, t, -q);
                if (R.T[t][j] != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // Enforce divisibility of the remaining block by the pivot.
            bool divisible = true;
            for (size_t i = t + 1; i < R.s && divisible; ++i)
                for (size_t j = t + 1; j < R.n; ++j)
                    if (!mpz_divisible_p(R.T[i][j].get_mpz_t(), R.T[t][t].get_mpz_t())) {
                        R.add_row(t, i, 1);
                        divisible = false;
                        break;
                    }
            if (divisible)
                break;
        }
        if (R.T[t][t] < 0)
            R.negate_row(t);
    }
    return {R.V, R.T, R.Q};
}

} // namespace qsing
