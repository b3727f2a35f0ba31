#include "qsing/rational.hpp"
#include "qsing/error.hpp"

#include <cctype>

namespace qsing {

std::string to_string(const Rational& r) {
    return r.get_str();
}

std::string to_string(const Integer& z) {
    return z.get_str();
}

Rational parse_rational(const std::string& text) {
    size_t i = 0;
    if (i < text.size() && (text[i] == '-' || text[i] == '+'))
        ++i;
    size_t digits = 0;
    bool slash = false;
    size_t after_slash = 0;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            ++digits;
            if (slash)
                ++after_slash;
        } else if (c == '/' && !slash && digits > 0) {
            slash = true;
        } else {
            fail("ParseError", "not a rational literal: '" + text + "'");
        }
    }
    if (digits == 0 || (slash && after_slash == 0))
        fail("ParseError", "not a rational literal: '" + text + "'");
    std::string body = text[0] == '+' ? text.substr(1) : text;
    Rational r;
    if (r.set_str(body, 10) != 0)
        fail("ParseError", "not a rational literal: '" + text + "'");
    if (r.get_den() == 0)
        fail("ParseError", "zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

Integer floor_of(const Rational& r) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

Rational frac(const Rational& r) {
    return r - Rational(floor_of(r));
}

bool is_integer(const Rational& r) {
    return r.get_den() == 1;
}

Rational rational_pow(const Rational& base, long exponent) {
    Rational result = 1;
    Rational b = exponent >= 0 ? base : Rational(1) / base;
    long e = exponent >= 0 ? exponent : -exponent;
    for (long k = 0; k < e; ++k)
        result *= b;
    return result;
}

bool rational_sqrt(const Rational& r, Rational& root) {
    if (sgn(r) < 0)
        return false;
    if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t()))
        return false;
    Integer n, d;
    mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
    mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
    root = Rational(n, d);
    root.canonicalize();
    return true;
}

Matrix zero_matrix(size_t rows, size_t cols) {
    return Matrix(rows, Vector(cols, Rational(0)));
}

Matrix identity_matrix(size_t n) {
    Matrix m = zero_matrix(n, n);
    for (size_t i = 0; i < n; ++i)
        m[i][i] = 1;
    return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    size_t inner = b.size();
    size_t cols = inner ? b[0].size() : 0;
    Matrix c = zero_matrix(a.size(), cols);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < inner; ++k) {
            if (sgn(a[i][k]) == 0)
                continue;
            for (size_t j = 0; j < cols; ++j)
                c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

Matrix transpose(const Matrix& a) {
    if (a.empty())
        return {};
    Matrix t = zero_matrix(a[0].size(), a.size());
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[i].size(); ++j)
            t[j][i] = a[i][j];
    return t;
}

bool invert(const Matrix& a, Matrix& inverse) {
    size_t n = a.size();
    Matrix m = a;
    inverse = identity_matrix(n);
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        while (pivot < n && sgn(m[pivot][col]) == 0)
            ++pivot;
        if (pivot == n)
            return false;
        std::swap(m[pivot], m[col]);
        std::swap(inverse[pivot], inverse[col]);
        Rational p = m[col][col];
        for (size_t j = 0; j < n; ++j) {
            m[col][j] /= p;
            inverse[col][j] /= p;
        }
        for (size_t i = 0; i < n; ++i) {
            if (i == col || sgn(m[i][col]) == 0)
                continue;
            Rational f = m[i][col];
            for (size_t j = 0; j < n; ++j) {
                m[i][j] -= f * m[col][j];
                inverse[i][j] -= f * inverse[col][j];
            }
        }
    }
    return true;
}

size_t rank(Matrix a) {
    if (a.empty())
        return 0;
    size_t rows = a.size(), cols = a[0].size(), r = 0;
    for (size_t col = 0; col < cols && r < rows; ++col) {
        size_t pivot = r;
        while (pivot < rows && sgn(a[pivot][col]) == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(a[pivot], a[r]);
        for (size_t i = r + 1; i < rows; ++i) {
            if (sgn(a[i][col]) == 0)
                continue;
            Rational f = a[i][col] / a[r][col];
            for (size_t j = col; j < cols; ++j)
                a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

bool solve_linear(const Matrix& a, const Vector& b, Vector& x, bool& unique) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    Matrix m = a;
    for (size_t i = 0; i < rows; ++i)
        m[i].push_back(b[i]);
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t col = 0; col < cols && r < rows; ++col) {
        size_t pivot = r;
        while (pivot < rows && sgn(m[pivot][col]) == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(m[pivot], m[r]);
        Rational p = m[r][col];
        for (size_t j = col; j <= cols; ++j)
            m[r][j] /= p;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(m[i][col]) == 0)
                continue;
            Rational f = m[i][col];
            for (size_t j = col; j <= cols; ++j)
                m[i][j] -= f * m[r][j];
        }
        pivots.push_back(col);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (sgn(m[i][cols]) != 0)
            return false;
    unique = (r == cols);
    x.assign(cols, Rational(0));
    for (size_t i = 0; i < r; ++i)
        x[pivots[i]] = m[i][cols];
    return true;
}

} // namespace qsing
