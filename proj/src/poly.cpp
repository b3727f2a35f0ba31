#include "qsing/poly.hpp"
#include "qsing/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qsing {

int total_degree(const Monomial& m) {
    int d = 0;
    for (int e : m)
        d += e;
    return d;
}

bool divides(const Monomial& a, const Monomial& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

Monomial monomial_product(const Monomial& a, const Monomial& b) {
    Monomial c(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        c[i] = a[i] + b[i];
    return c;
}

Monomial monomial_quotient(const Monomial& b, const Monomial& a) {
    Monomial c(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        c[i] = b[i] - a[i];
    return c;
}

Monomial monomial_lcm(const Monomial& a, const Monomial& b) {
    Monomial c(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        c[i] = std::max(a[i], b[i]);
    return c;
}

bool TermOrder::less(const Monomial& a, const Monomial& b) const {
    if (!weights_.empty()) {
        long wa = 0, wb = 0;
        for (size_t i = 0; i < a.size(); ++i) {
            wa += weights_[i] * a[i];
            wb += weights_[i] * b[i];
        }
        if (wa != wb)
            return wa < wb;
    }
    int da = total_degree(a), db = total_degree(b);
    if (da != db)
        return da < db;
    for (size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i])
            return a[i] > b[i];
    }
    return false;
}

Poly Poly::constant(size_t nvars, const Rational& c) {
    Poly p(nvars);
    p.add_term(Monomial(nvars, 0), c);
    return p;
}

Poly Poly::variable(size_t nvars, size_t index) {
    Monomial m(nvars, 0);
    m[index] = 1;
    return monomial(m);
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
    Poly p(m.size());
    p.add_term(m, c);
    return p;
}

Rational Poly::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (sgn(c) == 0)
        return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

Poly Poly::operator+(const Poly& o) const {
    Poly r = *this;
    r += o;
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    Poly r = *this;
    r -= o;
    return r;
}

Poly Poly::operator-() const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_)
        r.terms_.emplace(m, -c);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (nvars_ == 0 && terms_.empty())
        nvars_ = o.nvars_;
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (nvars_ == 0 && terms_.empty())
        nvars_ = o.nvars_;
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

Poly Poly::operator*(const Poly& o) const {
    Poly r(std::max(nvars_, o.nvars_));
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_)
            r.add_term(monomial_product(ma, mb), ca * cb);
    return r;
}

Poly Poly::operator*(const Rational& c) const {
    Poly r(nvars_);
    if (sgn(c) == 0)
        return r;
    for (const auto& [m, v] : terms_)
        r.terms_.emplace(m, v * c);
    return r;
}

Poly operator*(const Rational& c, const Poly& p) {
    return p * c;
}

Poly Poly::pow(unsigned e) const {
    Poly r = constant(nvars_, 1);
    for (unsigned k = 0; k < e; ++k)
        r = r * *this;
    return r;
}

Poly Poly::derivative(size_t var) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0)
            continue;
        Monomial d = m;
        d[var] -= 1;
        r.add_term(d, c * m[var]);
    }
    return r;
}

Poly Poly::shift(const Monomial& s) const {
    Poly r(nvars_);
    for (const auto& [m, c] : terms_)
        r.terms_.emplace(monomial_product(m, s), c);
    return r;
}

Poly Poly::restrict_to(const std::vector<size_t>& kept) const {
    Poly r(kept.size());
    for (const auto& [m, c] : terms_) {
        bool survives = true;
        for (size_t i = 0; i < m.size() && survives; ++i)
            if (m[i] != 0 && std::find(kept.begin(), kept.end(), i) == kept.end())
                survives = false;
        if (!survives)
            continue;
        Monomial sub(kept.size());
        for (size_t k = 0; k < kept.size(); ++k)
            sub[k] = m[kept[k]];
        r.add_term(sub, c);
    }
    return r;
}

Poly Poly::embed(size_t nvars, const std::vector<size_t>& map) const {
    Poly r(nvars);
    for (const auto& [m, c] : terms_) {
        Monomial big(nvars, 0);
        for (size_t i = 0; i < m.size(); ++i)
            big[map[i]] = m[i];
        r.add_term(big, c);
    }
    return r;
}

Poly Poly::substitute(const std::vector<Poly>& values) const {
    size_t target = values.empty() ? 0 : values[0].nvars();
    Poly r(target);
    for (const auto& [m, c] : terms_) {
        Poly t = constant(target, c);
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0)
                t = t * values[i].pow(static_cast<unsigned>(m[i]));
        r += t;
    }
    return r;
}

Monomial Poly::leading_monomial(const TermOrder& order) const {
    const Monomial* best = nullptr;
    for (const auto& [m, c] : terms_)
        if (!best || order.less(*best, m))
            best = &m;
    return best ? *best : Monomial(nvars_, 0);
}

Rational Poly::leading_coefficient(const TermOrder& order) const {
    return is_zero() ? Rational(0) : coeff(leading_monomial(order));
}

std::vector<Term> Poly::sorted_terms(const TermOrder& order) const {
    std::vector<Term> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(),
              [&](const Term& a, const Term& b) { return order.less(b.first, a.first); });
    return out;
}

int Poly::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_)
        d = std::max(d, total_degree(m));
    return d;
}

Rational weighted_degree(const Monomial& m, const std::vector<Rational>& weights) {
    Rational d = 0;
    for (size_t i = 0; i < m.size(); ++i)
        d += weights[i] * m[i];
    return d;
}

bool Poly::is_weighted_homogeneous(const std::vector<Rational>& weights, Rational& degree) const {
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational d = weighted_degree(m, weights);
        if (first) {
            degree = d;
            first = false;
        } else if (d != degree) {
            return false;
        }
    }
    if (first)
        degree = 0;
    return true;
}

std::string render_monomial(const Monomial& m, const std::vector<std::string>& vars) {
    std::string out;
    for (size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0)
            continue;
        if (!out.empty())
            out += "*";
        out += vars[i];
        if (m[i] > 1)
            out += "^" + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

std::string render(const Poly& p, const std::vector<std::string>& vars, const TermOrder& order) {
    if (p.is_zero())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : p.sorted_terms(order)) {
        Rational mag = abs(c);
        bool negative = sgn(c) < 0;
        if (first)
            out += negative ? "-" : "";
        else
            out += negative ? " - " : " + ";
        first = false;
        bool unit_monomial = total_degree(m) == 0;
        if (unit_monomial) {
            out += to_string(mag);
        } else {
            if (mag != 1)
                out += to_string(mag) + "*";
            out += render_monomial(m, vars);
        }
    }
    return out;
}

namespace {

struct Token {
    enum Kind { Int, Ident, Plus, Minus, Star, Caret, Slash, End } kind;
    std::string text;
    size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> toks;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j])))
                ++j;
            toks.push_back({Token::Int, s.substr(i, j - i), i});
            i = j;
        } else if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_'))
                ++j;
            toks.push_back({Token::Ident, s.substr(i, j - i), i});
            i = j;
        } else {
            Token::Kind k;
            switch (c) {
            case '+': k = Token::Plus; break;
            case '-': k = Token::Minus; break;
            case '*': k = Token::Star; break;
            case '^': k = Token::Caret; break;
            case '/': k = Token::Slash; break;
            default:
                fail("ParseError", std::string("unexpected character '") + c + "' at position " +
                                       std::to_string(i));
            }
            toks.push_back({k, std::string(1, c), i});
            ++i;
        }
    }
    toks.push_back({Token::End, "", s.size()});
    return toks;
}

class Parser {
public:
    Parser(const std::string& text, const std::optional<std::vector<std::string>>& vars)
        : toks_(tokenize(text)), fixed_(vars.has_value()) {
        if (vars)
            names_ = *vars;
    }

    std::vector<std::pair<std::map<std::string, int>, Rational>> parse() {
        std::vector<std::pair<std::map<std::string, int>, Rational>> terms;
        int sign = 1;
        if (peek().kind == Token::Minus || peek().kind == Token::Plus) {
            sign = peek().kind == Token::Minus ? -1 : 1;
            ++at_;
        }
        terms.push_back(term(sign));
        while (peek().kind == Token::Plus || peek().kind == Token::Minus) {
            sign = peek().kind == Token::Minus ? -1 : 1;
            ++at_;
            terms.push_back(term(sign));
        }
        if (peek().kind != Token::End)
            error("unexpected '" + peek().text + "'");
        return terms;
    }

    std::vector<std::string>& names() { return names_; }

private:
    const Token& peek() const { return toks_[at_]; }

    [[noreturn]] void error(const std::string& what) const {
        fail("ParseError", what + " at position " + std::to_string(peek().pos));
    }

    std::pair<std::map<std::string, int>, Rational> term(int sign) {
        std::map<std::string, int> powers;
        Rational coeff = sign;
        if (peek().kind == Token::Int) {
            Integer num(peek().text);
            ++at_;
            Rational value(num);
            if (peek().kind == Token::Slash) {
                ++at_;
                if (peek().kind != Token::Int)
                    error("expected denominator");
                Integer den(peek().text);
                if (den == 0)
                    error("zero denominator");
                ++at_;
                value = Rational(num, den);
                value.canonicalize();
            }
            coeff *= value;
            while (peek().kind == Token::Star) {
                ++at_;
                factor(powers);
            }
        } else if (peek().kind == Token::Ident) {
            factor(powers);
            while (peek().kind == Token::Star) {
                ++at_;
                factor(powers);
            }
        } else {
            error("expected a term");
        }
        return {powers, coeff};
    }

    void factor(std::map<std::string, int>& powers) {
        if (peek().kind != Token::Ident)
            error("expected a variable");
        std::string name = peek().text;
        ++at_;
        if (std::find(names_.begin(), names_.end(), name) == names_.end()) {
            if (fixed_)
                fail("UnknownVariable", "variable '" + name + "' not in the declared list");
            names_.push_back(name);
        }
        int e = 1;
        if (peek().kind == Token::Caret) {
            ++at_;
            if (peek().kind == Token::Minus)
                fail("NegativeExponent", "negative exponent at position " + std::to_string(peek().pos));
            if (peek().kind != Token::Int)
                error("expected exponent");
            e = std::stoi(peek().text);
            ++at_;
        }
        powers[name] += e;
    }

    std::vector<Token> toks_;
    size_t at_ = 0;
    bool fixed_;
    std::vector<std::string> names_;
};

} // namespace

ParsedPoly parse_polynomial(const std::string& text, const std::optional<std::vector<std::string>>& vars) {
    Parser parser(text, vars);
    auto terms = parser.parse();
    ParsedPoly out;
    out.vars = parser.names();
    out.poly = Poly(out.vars.size());
    for (const auto& [powers, c] : terms) {
        Monomial m(out.vars.size(), 0);
        for (const auto& [name, e] : powers) {
            size_t idx = std::find(out.vars.begin(), out.vars.end(), name) - out.vars.begin();
            m[idx] = e;
        }
        out.poly.add_term(m, c);
    }
    return out;
}

} // namespace qsing
