#pragma once

// Truncated free graded commutative rings over Q, and the characteristic
// class calculus (Td*, Ch, exterior powers, Chern classes, the P-classes)
// carried out on split bundles via their Chern roots.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cydegen/error.hpp"
#include "cydegen/rational.hpp"

namespace cydegen {

struct Generator {
    std::string name;
    int degree = 1;
};

/// One exponent per ring generator, in generator order.
using Exponents = std::vector<std::uint16_t>;

/// Generators plus a total-degree cutoff. Cheap to copy; two Ring values
/// compare equal only if they come from the same `create` call.
class Ring {
public:
    static Ring create(std::vector<Generator> generators, int cutoff) {
        if (generators.empty()) throw InputError("ring needs at least one generator");
        if (cutoff < 1) throw InputError("ring cutoff must be >= 1");
        int max_degree = 0;
        for (std::size_t i = 0; i < generators.size(); ++i) {
            const auto& g = generators[i];
            if (g.name.empty()) throw InputError("empty generator name");
            if (g.degree <= 0)
                throw InputError("generator '" + g.name + "' has non-positive degree");
            for (std::size_t j = 0; j < i; ++j)
                if (generators[j].name == g.name)
                    throw InputError("duplicate generator name '" + g.name + "'");
            max_degree = std::max(max_degree, g.degree);
        }
        if (cutoff < max_degree)
            throw InputError("ring cutoff is below the largest generator degree");
        auto impl = std::make_shared<Impl>();
        impl->generators = std::move(generators);
        impl->cutoff = cutoff;
        return Ring(std::move(impl));
    }

    /// Generators x1..xn of degree 1, plus any extra degree-1 names.
    static Ring chern_roots(int n, int cutoff, std::vector<std::string> extra = {}) {
        std::vector<Generator> gens;
        for (int i = 1; i <= n; ++i) gens.push_back({"x" + std::to_string(i), 1});
        for (auto& name : extra) gens.push_back({std::move(name), 1});
        return create(std::move(gens), cutoff);
    }

    const std::vector<Generator>& generators() const { return impl_->generators; }
    std::size_t size() const { return impl_->generators.size(); }
    int cutoff() const { return impl_->cutoff; }

    std::optional<std::size_t> find(std::string_view name) const {
        const auto& g = impl_->generators;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g[i].name == name) return i;
        return std::nullopt;
    }

    std::size_t index_of(std::string_view name) const {
        if (auto i = find(name)) return *i;
        throw InputError("unknown generator '" + std::string(name) + "'");
    }

    int degree(const Exponents& e) const {
        int d = 0;
        for (std::size_t i = 0; i < e.size(); ++i) d += e[i] * impl_->generators[i].degree;
        return d;
    }

    Exponents unit_exponents() const { return Exponents(size(), 0); }

    friend bool operator==(const Ring& a, const Ring& b) { return a.impl_ == b.impl_; }

private:
    struct Impl {
        std::vector<Generator> generators;
        int cutoff = 0;
    };
    explicit Ring(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

/// Element of a truncated ring: sparse map exponent vector -> rational.
/// Terms above `valid_cutoff()` are never stored; the valid cutoff can sit
/// below the ring cutoff after a division.
class GradedClass {
public:
    using Terms = std::map<Exponents, Rational>;

    explicit GradedClass(Ring ring) : ring_(std::move(ring)), valid_cutoff_(ring_.cutoff()) {}

    static GradedClass constant(const Ring& ring, const Rational& c) {
        GradedClass out(ring);
        out.add_term(ring.unit_exponents(), c);
        return out;
    }

    static GradedClass one(const Ring& ring) { return constant(ring, 1); }

    static GradedClass generator(const Ring& ring, std::string_view name) {
        Exponents e = ring.unit_exponents();
        e[ring.index_of(name)] = 1;
        return monomial(ring, std::move(e), 1);
    }

    static GradedClass monomial(const Ring& ring, Exponents e, const Rational& c) {
        if (e.size() != ring.size()) throw InputError("exponent vector has wrong length");
        GradedClass out(ring);
        out.add_term(std::move(e), c);
        return out;
    }

    const Ring& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    int valid_cutoff() const { return valid_cutoff_; }
    bool is_zero() const { return terms_.empty(); }

    Rational coefficient(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational constant_term() const { return coefficient(ring_.unit_exponents()); }

    /// Lowest total degree carrying a nonzero term.
    std::optional<int> min_degree() const {
        std::optional<int> best;
        for (const auto& [e, c] : terms_) {
            int d = ring_.degree(e);
            if (!best || d < *best) best = d;
        }
        return best;
    }

    /// Homogeneous component of the given total degree.
    GradedClass part(int degree) const {
        GradedClass out(ring_);
        out.valid_cutoff_ = valid_cutoff_;
        for (const auto& [e, c] : terms_)
            if (ring_.degree(e) == degree) out.terms_.emplace(e, c);
        return out;
    }

    GradedClass truncated(int degree) const {
        GradedClass out(ring_);
        out.valid_cutoff_ = std::min(valid_cutoff_, degree);
        for (const auto& [e, c] : terms_)
            if (ring_.degree(e) <= out.valid_cutoff_) out.terms_.emplace(e, c);
        return out;
    }

    /// Lowers the valid cutoff (never raises it).
    GradedClass with_valid_cutoff(int cutoff) const { return truncated(cutoff); }

    GradedClass& operator+=(const GradedClass& rhs) { return accumulate(rhs, 1); }
    GradedClass& operator-=(const GradedClass& rhs) { return accumulate(rhs, -1); }

    GradedClass& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    GradedClass operator-() const {
        GradedClass out = *this;
        for (auto& [e, c] : out.terms_) c = -c;
        return out;
    }

    friend GradedClass operator+(GradedClass a, const GradedClass& b) { return a += b; }
    friend GradedClass operator-(GradedClass a, const GradedClass& b) { return a -= b; }
    friend GradedClass operator*(GradedClass a, const Rational& s) { return a *= s; }
    friend GradedClass operator*(const Rational& s, GradedClass a) { return a *= s; }

    friend GradedClass operator*(const GradedClass& a, const GradedClass& b) {
        if (!(a.ring_ == b.ring_)) throw RingMismatch();
        const Ring& ring = a.ring_;
        GradedClass out(ring);
        out.valid_cutoff_ = std::min(a.valid_cutoff_, b.valid_cutoff_);
        const int cut = out.valid_cutoff_;

        // Bucket the right operand by degree so that only admissible pairs are visited.
        std::vector<std::vector<const Terms::value_type*>> by_degree(cut + 1);
        for (const auto& t : b.terms_) {
            int d = ring.degree(t.first);
            if (d <= cut) by_degree[d].push_back(&t);
        }
        Exponents sum(ring.size());
        for (const auto& [ea, ca] : a.terms_) {
            int da = ring.degree(ea);
            for (int db = 0; da + db <= cut; ++db) {
                for (const auto* t : by_degree[db]) {
                    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = ea[i] + t->first[i];
                    out.terms_[sum] += ca * t->second;
                }
            }
        }
        out.drop_zeros();
        return out;
    }

    GradedClass& operator*=(const GradedClass& rhs) { return *this = *this * rhs; }

    friend bool operator==(const GradedClass& a, const GradedClass& b) {
        return a.ring_ == b.ring_ && a.valid_cutoff_ == b.valid_cutoff_ && a.terms_ == b.terms_;
    }

    /// Terms ordered by degree, then by generator order.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::vector<std::pair<const Exponents*, const Rational*>> order;
        for (const auto& [e, c] : terms_) order.emplace_back(&e, &c);
        std::stable_sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
            int dx = ring_.degree(*x.first), dy = ring_.degree(*y.first);
            if (dx != dy) return dx < dy;
            return *x.first > *y.first;
        });
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : order) {
            Rational coef = *c;
            bool unit = ring_.degree(*e) == 0;
            if (first) {
                if (coef < 0) os << "-";
            } else {
                os << (coef < 0 ? " - " : " + ");
            }
            first = false;
            Rational mag = abs(coef);
            bool wrote = false;
            if (unit || mag != 1) {
                os << mag.get_str();
                wrote = true;
            }
            for (std::size_t i = 0; i < e->size(); ++i) {
                if ((*e)[i] == 0) continue;
                if (wrote) os << "*";
                os << ring_.generators()[i].name;
                if ((*e)[i] > 1) os << "^" << (*e)[i];
                wrote = true;
            }
        }
        return os.str();
    }

private:
    GradedClass& accumulate(const GradedClass& rhs, int sign) {
        if (!(ring_ == rhs.ring_)) throw RingMismatch();
        if (rhs.valid_cutoff_ < valid_cutoff_) *this = truncated(rhs.valid_cutoff_);
        for (const auto& [e, c] : rhs.terms_) {
            if (ring_.degree(e) > valid_cutoff_) continue;
            auto& slot = terms_[e];
            if (sign > 0)
                slot += c;
            else
                slot -= c;
            if (slot == 0) terms_.erase(e);
        }
        return *this;
    }

    void add_term(Exponents e, const Rational& c) {
        if (c == 0 || ring_.degree(e) > valid_cutoff_) return;
        auto& slot = terms_[std::move(e)];
        slot += c;
    }

    void drop_zeros() {
        for (auto it = terms_.begin(); it != terms_.end();)
            it = (it->second == 0) ? terms_.erase(it) : std::next(it);
    }

    Ring ring_;
    Terms terms_;
    int valid_cutoff_;
};

// ---------------------------------------------------------------------------
// Power series

namespace series {

/// Coefficients of x/(e^x - 1) up to x^order, from the Bernoulli recurrence
/// sum_{j=0}^{m} C(m+1, j) B_j = 0 (m >= 1), B_0 = 1; coefficient k is B_k / k!.
inline std::vector<Rational> todd_star(int order) {
    std::vector<Rational> bernoulli(order + 1);
    bernoulli[0] = 1;
    for (int m = 1; m <= order; ++m) {
        Rational acc = 0;
        Integer binom = 1;  // C(m+1, j)
        for (int j = 0; j < m; ++j) {
            acc += Rational(binom) * bernoulli[j];
            binom = binom * (m + 1 - j) / (j + 1);
        }
        bernoulli[m] = -acc / Rational(m + 1);
    }
    std::vector<Rational> out(order + 1);
    for (int k = 0; k <= order; ++k) out[k] = bernoulli[k] / factorial(k);
    return out;
}

/// Coefficients of exp(scale * x) up to x^order.
inline std::vector<Rational> exp(int order, const Rational& scale = 1) {
    std::vector<Rational> out(order + 1);
    Rational term = 1;
    for (int k = 0; k <= order; ++k) {
        out[k] = term;
        term = term * scale / Rational(k + 1);
    }
    return out;
}

}  // namespace series

/// sum_k coeffs[k] * u^k, truncated. `u` must have no constant term.
inline GradedClass apply_series(const std::vector<Rational>& coeffs, const GradedClass& u) {
    if (u.constant_term() != 0)
        throw InputError("series substitution needs an argument without constant term");
    const Ring& ring = u.ring();
    GradedClass out(ring);
    for (auto k = coeffs.size(); k-- > 0;) {
        out = out * u;
        out += GradedClass::constant(ring, coeffs[k]);
    }
    return out.truncated(u.valid_cutoff());
}

inline GradedClass exp_class(const GradedClass& u, const Rational& scale = 1) {
    return apply_series(series::exp(u.valid_cutoff(), scale), u);
}

inline GradedClass todd_star_class(const GradedClass& u) {
    return apply_series(series::todd_star(u.valid_cutoff()), u);
}

inline GradedClass power(const GradedClass& a, unsigned k) {
    GradedClass out = GradedClass::one(a.ring()).truncated(a.valid_cutoff());
    for (unsigned i = 0; i < k; ++i) out = out * a;
    return out;
}

/// Multiplicative inverse of a class with nonzero constant term.
inline GradedClass inverse(const GradedClass& a) {
    Rational c0 = a.constant_term();
    if (c0 == 0) throw NotDivisible("class with zero constant term is not invertible");
    const Ring& ring = a.ring();
    GradedClass w = (a - GradedClass::constant(ring, c0)) * (Rational(1) / c0);
    std::vector<Rational> geometric(a.valid_cutoff() + 1);
    for (std::size_t k = 0; k < geometric.size(); ++k) geometric[k] = (k % 2 == 0) ? 1 : -1;
    return apply_series(geometric, w) * (Rational(1) / c0);
}

// ---------------------------------------------------------------------------
// Split bundles

/// A bundle given by its Chern roots: distinct degree-1 generators.
class SplitBundle {
public:
    SplitBundle(Ring ring, std::vector<std::string> roots) : ring_(std::move(ring)), roots_(std::move(roots)) {
        for (std::size_t i = 0; i < roots_.size(); ++i) {
            auto idx = ring_.index_of(roots_[i]);
            if (ring_.generators()[idx].degree != 1)
                throw InputError("Chern root '" + roots_[i] + "' is not a degree-1 generator");
            for (std::size_t j = 0; j < i; ++j)
                if (roots_[j] == roots_[i]) throw InputError("repeated Chern root '" + roots_[i] + "'");
        }
    }

    const Ring& ring() const { return ring_; }
    const std::vector<std::string>& roots() const { return roots_; }
    int rank() const { return static_cast<int>(roots_.size()); }
    GradedClass root(std::size_t i) const { return GradedClass::generator(ring_, roots_.at(i)); }

    /// Direct sum (concatenated roots, must not overlap).
    friend SplitBundle operator+(const SplitBundle& a, const SplitBundle& b) {
        if (!(a.ring_ == b.ring_)) throw RingMismatch();
        auto roots = a.roots_;
        roots.insert(roots.end(), b.roots_.begin(), b.roots_.end());
        return SplitBundle(a.ring_, std::move(roots));
    }

private:
    Ring ring_;
    std::vector<std::string> roots_;
};

/// prod_i x_i / (e^{x_i} - 1)
inline GradedClass todd_star(const SplitBundle& bundle) {
    const Ring& ring = bundle.ring();
    const auto coeffs = series::todd_star(ring.cutoff());
    GradedClass out = GradedClass::one(ring);
    for (int i = 0; i < bundle.rank(); ++i) out = out * apply_series(coeffs, bundle.root(i));
    return out;
}

inline GradedClass chern_character(const SplitBundle& bundle) {
    const Ring& ring = bundle.ring();
    const auto coeffs = series::exp(ring.cutoff());
    GradedClass out(ring);
    for (int i = 0; i < bundle.rank(); ++i) out += apply_series(coeffs, bundle.root(i));
    return out;
}

/// Ch(Lambda^p F) for p = 0..rank, from prod_i (1 + t e^{x_i}).
inline std::vector<GradedClass> lambda_ch_all(const SplitBundle& bundle) {
    const Ring& ring = bundle.ring();
    const auto coeffs = series::exp(ring.cutoff());
    std::vector<GradedClass> lam(bundle.rank() + 1, GradedClass(ring));
    lam[0] = GradedClass::one(ring);
    for (int i = 0; i < bundle.rank(); ++i) {
        GradedClass ex = apply_series(coeffs, bundle.root(i));
        for (int p = i + 1; p >= 1; --p) lam[p] += lam[p - 1] * ex;
    }
    return lam;
}

inline GradedClass lambda_ch(const SplitBundle& bundle, int p) {
    if (p < 0 || p > bundle.rank())
        throw InputError("exterior power " + std::to_string(p) + " out of range 0.." +
                         std::to_string(bundle.rank()));
    return lambda_ch_all(bundle)[p];
}

/// Elementary symmetric polynomials c_0..c_rank in the roots.
inline std::vector<GradedClass> chern_classes(const SplitBundle& bundle) {
    const Ring& ring = bundle.ring();
    std::vector<GradedClass> c(bundle.rank() + 1, GradedClass(ring));
    c[0] = GradedClass::one(ring);
    for (int i = 0; i < bundle.rank(); ++i) {
        GradedClass x = bundle.root(i);
        for (int p = i + 1; p >= 1; --p) c[p] += c[p - 1] * x;
    }
    return c;
}

inline GradedClass chern_class(const SplitBundle& bundle, int i) {
    if (i < 0 || i > bundle.rank())
        throw InputError("Chern class index " + std::to_string(i) + " out of range 0.." +
                         std::to_string(bundle.rank()));
    return chern_classes(bundle)[i];
}

struct PClasses {
    GradedClass p;       // Td*(F) sum (-1)^k Ch(Lambda^k F)
    GradedClass prime;   // weight k
    GradedClass second;  // weight k(k-1)/2
};

inline PClasses p_classes(const SplitBundle& bundle) {
    const Ring& ring = bundle.ring();
    auto lam = lambda_ch_all(bundle);
    GradedClass s0(ring), s1(ring), s2(ring);
    for (int k = 0; k <= bundle.rank(); ++k) {
        Rational sign = sign_power(k);
        s0 += lam[k] * sign;
        s1 += lam[k] * (sign * k);
        s2 += lam[k] * (sign * make_rational(k * (k - 1), 2));
    }
    GradedClass td = todd_star(bundle);
    return {td * s0, td * s1, td * s2};
}

namespace detail {

/// Exact quotient of two polynomials by lex-leading-term division; a single
/// divisor leaves zero remainder iff it divides.
inline GradedClass exact_polynomial_quotient(GradedClass num, const GradedClass& den) {
    const Ring& ring = den.ring();
    GradedClass q(ring);
    const auto& [lead_e, lead_c] = *den.terms().rbegin();
    while (!num.is_zero()) {
        const auto& [e, c] = *num.terms().rbegin();
        Exponents m(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < lead_e[i]) throw NotDivisible("class is not divisible by the denominator");
            m[i] = e[i] - lead_e[i];
        }
        GradedClass step = GradedClass::monomial(ring, std::move(m), c / lead_c);
        q += step;
        num -= step * den;
    }
    return q;
}

}  // namespace detail

/// q with q * den = num through degree min(cutoffs); q is valid through that
/// cutoff minus the lowest degree of `den`.
inline GradedClass divide_by_class(const GradedClass& num, const GradedClass& den) {
    if (!(num.ring() == den.ring())) throw RingMismatch();
    const Ring& ring = num.ring();
    auto low_degree = den.min_degree();
    if (!low_degree) throw NotDivisible("division by the zero class");
    const int d0 = *low_degree;
    const int cut = std::min(num.valid_cutoff(), den.valid_cutoff());
    if (d0 > cut) throw NotDivisible("denominator vanishes below the valid cutoff");

    GradedClass remainder = num.truncated(cut);
    if (auto m = remainder.min_degree(); m && *m < d0)
        throw NotDivisible("numerator has terms below the degree of the denominator");
    const GradedClass den_low = den.part(d0);
    const GradedClass den_cut = den.truncated(cut);

    GradedClass q(ring);
    for (int k = 0; k + d0 <= cut; ++k) {
        GradedClass target = remainder.part(k + d0);
        if (target.is_zero()) continue;
        GradedClass qk = detail::exact_polynomial_quotient(target, den_low);
        q += qk;
        remainder -= qk * den_cut;
    }
    return q.truncated(cut - d0);
}

/// Coefficient of h^N in a class of the one-generator ring Q[h].
inline Rational integrate_pn(const GradedClass& cls, int n) {
    const Ring& ring = cls.ring();
    if (ring.size() != 1 || ring.generators()[0].degree != 1)
        throw InputError("integration over P^N needs a ring with a single degree-1 generator");
    if (n < 0 || n > cls.valid_cutoff())
        throw InputError("degree " + std::to_string(n) + " exceeds the class's valid cutoff");
    return cls.coefficient(Exponents{static_cast<std::uint16_t>(n)});
}

}  // namespace cydegen
