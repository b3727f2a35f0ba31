#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace qsing {

using Rational = mpq_class;
using Integer = mpz_class;

// "p/q" or "p" for integers.
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

// Accepts "p", "-p", "p/q"; normalizes. Throws Error("ParseError") otherwise.
Rational parse_rational(const std::string& text);

Integer floor_of(const Rational& r);
Rational frac(const Rational& r);  // r - floor(r), in [0,1)
bool is_integer(const Rational& r);
Rational rational_pow(const Rational& base, long exponent);

// Exact square root if r is a square of a rational.
bool rational_sqrt(const Rational& r, Rational& root);

using Vector = std::vector<Rational>;
using Matrix = std::vector<std::vector<Rational>>;

Matrix zero_matrix(size_t rows, size_t cols);
Matrix identity_matrix(size_t n);
Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

// Gauss-Jordan over Q. Returns false when singular.
bool invert(const Matrix& a, Matrix& inverse);
size_t rank(Matrix a);

// Solves a x = b. Returns false when inconsistent; 'unique' reports full column rank.
bool solve_linear(const Matrix& a, const Vector& b, Vector& x, bool& unique);

} // namespace qsing
