#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cydegen/error.hpp"
#include "cydegen/rational.hpp"

namespace cydegen {

using Monomial = std::vector<std::uint16_t>;

inline int total_degree(const Monomial& m) {
    int d = 0;
    for (auto e : m) d += e;
    return d;
}

/// Polynomial over Q in named variables, expanded around the origin.
class LocalPoly {
public:
    using Terms = std::map<Monomial, Rational>;

    LocalPoly() = default;
    explicit LocalPoly(std::vector<std::string> variables) : variables_(std::move(variables)) {}

    static LocalPoly constant(std::vector<std::string> variables, const Rational& c) {
        LocalPoly p(std::move(variables));
        p.add_term(Monomial(p.variables_.size(), 0), c);
        return p;
    }

    static LocalPoly variable(std::vector<std::string> variables, std::size_t index) {
        LocalPoly p(std::move(variables));
        Monomial m(p.variables_.size(), 0);
        m.at(index) = 1;
        p.add_term(std::move(m), 1);
        return p;
    }

    const std::vector<std::string>& variables() const { return variables_; }
    std::size_t arity() const { return variables_.size(); }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational constant_term() const { return coefficient(Monomial(arity(), 0)); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }

    void add_term(Monomial m, const Rational& c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(std::move(m), c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    LocalPoly& operator+=(const LocalPoly& rhs) {
        check_compatible(rhs);
        for (const auto& [m, c] : rhs.terms_) add_term(m, c);
        return *this;
    }

    LocalPoly& operator-=(const LocalPoly& rhs) {
        check_compatible(rhs);
        for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
        return *this;
    }

    LocalPoly& operator*=(const Rational& s) {
        if (s == 0) terms_.clear();
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend LocalPoly operator+(LocalPoly a, const LocalPoly& b) { return a += b; }
    friend LocalPoly operator-(LocalPoly a, const LocalPoly& b) { return a -= b; }
    friend LocalPoly operator*(LocalPoly a, const Rational& s) { return a *= s; }
    LocalPoly operator-() const { return LocalPoly(*this) *= Rational(-1); }

    friend LocalPoly operator*(const LocalPoly& a, const LocalPoly& b) {
        a.check_compatible(b);
        LocalPoly out(a.variables_);
        Monomial sum(a.arity());
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = ma[i] + mb[i];
                out.add_term(sum, ca * cb);
            }
        return out;
    }

    LocalPoly pow(unsigned k) const {
        LocalPoly out = constant(variables_, 1);
        LocalPoly base = *this;
        while (k > 0) {
            if (k & 1u) out = out * base;
            k >>= 1u;
            if (k > 0) base = base * base;
        }
        return out;
    }

    /// Formal partial derivative in variable `index`.
    LocalPoly derivative(std::size_t index) const {
        LocalPoly out(variables_);
        for (const auto& [m, c] : terms_) {
            if (m.at(index) == 0) continue;
            Monomial d = m;
            --d[index];
            out.add_term(std::move(d), c * m[index]);
        }
        return out;
    }

    /// Drops all terms of total degree >= bound.
    LocalPoly truncated_below(int bound) const {
        LocalPoly out(variables_);
        for (const auto& [m, c] : terms_)
            if (total_degree(m) < bound) out.terms_.emplace(m, c);
        return out;
    }

    friend bool operator==(const LocalPoly& a, const LocalPoly& b) {
        return a.variables_ == b.variables_ && a.terms_ == b.terms_;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<Monomial, Rational>> order(terms_.begin(), terms_.end());
        std::stable_sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
            int dx = total_degree(x.first), dy = total_degree(y.first);
            if (dx != dy) return dx < dy;
            return x.first > y.first;
        });
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, c] : order) {
            if (first)
                os << (c < 0 ? "-" : "");
            else
                os << (c < 0 ? " - " : " + ");
            first = false;
            Rational mag = abs(c);
            bool wrote = false;
            if (total_degree(m) == 0 || mag != 1) {
                os << mag.get_str();
                wrote = true;
            }
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (wrote) os << "*";
                os << variables_[i];
                if (m[i] > 1) os << "^" << m[i];
                wrote = true;
            }
        }
        return os.str();
    }

private:
    void check_compatible(const LocalPoly& rhs) const {
        if (variables_ != rhs.variables_) throw InputError("polynomials use different variable lists");
    }

    std::vector<std::string> variables_;
    Terms terms_;
};

// ---------------------------------------------------------------------------
// Text grammar
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('+' | '-') unary | power
//   power   := primary ('^' integer)?
//   primary := integer | identifier | '(' expr ')'
//
// identifier := [A-Za-z_][A-Za-z0-9_]*; division only by nonzero constants,
// so "3/2*x^2" is a rational coefficient.

namespace detail {

class PolyParser {
public:
    PolyParser(std::string_view text, std::vector<std::string> variables, bool collect)
        : text_(text), variables_(std::move(variables)), collect_(collect) {}

    LocalPoly parse() {
        skip_ws();
        if (at_end()) throw SyntaxError("empty polynomial", pos_);
        LocalPoly p = expr();
        skip_ws();
        if (!at_end()) throw SyntaxError(std::string("unexpected '") + text_[pos_] + "'", pos_);
        return p;
    }

    const std::vector<std::string>& variables() const { return variables_; }

private:
    LocalPoly expr() {
        LocalPoly acc = term();
        for (;;) {
            skip_ws();
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    LocalPoly term() {
        LocalPoly acc = unary();
        for (;;) {
            skip_ws();
            if (accept('*')) {
                acc = acc * unary();
            } else if (peek() == '/') {
                std::size_t at = pos_++;
                LocalPoly d = unary();
                if (!d.is_constant() || d.is_zero())
                    throw SyntaxError("division by a non-constant or zero expression", at);
                acc *= Rational(1) / d.constant_term();
            } else {
                return acc;
            }
        }
    }

    LocalPoly unary() {
        skip_ws();
        if (accept('+')) return unary();
        if (accept('-')) return -unary();
        return power();
    }

    LocalPoly power() {
        LocalPoly base = primary();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw SyntaxError("expected a nonnegative integer exponent", pos_);
            std::size_t at = pos_;
            Integer k = integer();
            if (k > 1000) throw SyntaxError("exponent too large", at);
            int base_degree = 0;
            for (const auto& [m, c] : base.terms()) base_degree = std::max(base_degree, total_degree(m));
            if (static_cast<long>(base_degree) * k.get_si() > 1000) throw SyntaxError("exponent too large", at);
            return base.pow(static_cast<unsigned>(k.get_ui()));
        }
        return base;
    }

    LocalPoly primary() {
        skip_ws();
        if (at_end()) throw SyntaxError("unexpected end of input", pos_);
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return LocalPoly::constant(variables_, Rational(integer()));
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t at = pos_;
            std::string name;
            while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_'))
                name.push_back(text_[pos_++]);
            return LocalPoly::variable(variables_, variable_index(name, at));
        }
        if (accept('(')) {
            LocalPoly inner = expr();
            skip_ws();
            if (!accept(')')) throw SyntaxError("expected ')'", pos_);
            return inner;
        }
        throw SyntaxError(std::string("unexpected '") + c + "'", pos_);
    }

    Integer integer() {
        std::string digits;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digits.push_back(text_[pos_++]);
        return Integer(digits);
    }

    std::size_t variable_index(const std::string& name, std::size_t at) {
        for (std::size_t i = 0; i < variables_.size(); ++i)
            if (variables_[i] == name) return i;
        if (!collect_) throw SyntaxError("unknown variable '" + name + "'", at);
        // Collecting mode: a new name makes every existing coefficient map stale,
        // so restart the parse with the extended list.
        variables_.push_back(name);
        throw Restart{};
    }

    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }

public:
    struct Restart {};

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::vector<std::string> variables_;
    bool collect_;
};

}  // namespace detail

/// Parses `text` over the given ordered variables. Throws SyntaxError.
inline LocalPoly parse_poly(std::string_view text, const std::vector<std::string>& variables) {
    for (std::size_t i = 0; i < variables.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (variables[i] == variables[j]) throw InputError("duplicate variable '" + variables[i] + "'");
    if (variables.empty()) throw InputError("no variables given");
    return detail::PolyParser(text, variables, false).parse();
}

/// Parses `text`, taking variables in order of first appearance.
inline LocalPoly parse_poly(std::string_view text) {
    std::vector<std::string> vars;
    for (;;) {
        detail::PolyParser parser(text, vars, true);
        try {
            LocalPoly p = parser.parse();
            if (vars.empty()) throw InputError("polynomial has no variables");
            return p;
        } catch (const detail::PolyParser::Restart&) {
            vars = parser.variables();
        }
    }
}

}  // namespace cydegen
