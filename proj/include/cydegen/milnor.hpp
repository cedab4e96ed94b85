#pragma once

// Milnor numbers of isolated hypersurface germs: the colength of the Jacobian
// ideal in the local ring, found by row-reducing Jac(f) + m^D for growing D
// until dim Q[z]/(Jac + m^D) stops growing (Nakayama).

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cydegen/config.hpp"
#include "cydegen/error.hpp"
#include "cydegen/localpoly.hpp"
#include "cydegen/rational.hpp"

namespace cydegen {

inline constexpr int default_degree_cap = config::defaults.degree_cap;

struct MilnorResult {
    int mu = 0;
    /// D with d(D) = d(D+1).
    int stabilization_degree = 0;
    /// Non-pivot monomials spanning the local algebra, ascending (degree, lex).
    std::vector<Monomial> monomial_basis;
    /// Some partial derivative is a unit: the germ is smooth and mu = 0.
    bool smooth_germ = false;

    friend bool operator==(const MilnorResult&, const MilnorResult&) = default;
};

inline std::vector<LocalPoly> jacobian_ideal(const LocalPoly& f) {
    std::vector<LocalPoly> out;
    out.reserve(f.arity());
    for (std::size_t i = 0; i < f.arity(); ++i) out.push_back(f.derivative(i));
    return out;
}

namespace detail {

/// All monomials in `arity` variables with total degree < bound, ordered by
/// (total degree, lex) descending; index 0 is the largest.
inline std::vector<Monomial> monomials_below(std::size_t arity, int bound) {
    std::vector<Monomial> out;
    Monomial m(arity, 0);
    // Enumerate by degree using a simple recursive fill.
    auto fill = [&](auto&& self, std::size_t var, int remaining) -> void {
        if (var + 1 == arity) {
            m[var] = static_cast<std::uint16_t>(remaining);
            out.push_back(m);
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            m[var] = static_cast<std::uint16_t>(e);
            self(self, var + 1, remaining - e);
        }
    };
    for (int d = bound - 1; d >= 0; --d) fill(fill, 0, d);
    return out;
}

/// Rank and pivot columns of the given sparse rows (column index -> value),
/// by Gauss-Jordan elimination over Q choosing the lowest column index first.
inline std::vector<bool> pivot_columns(std::vector<std::map<std::size_t, Rational>> rows, std::size_t ncols) {
    using Row = std::map<std::size_t, Rational>;
    // Echelon rows indexed by their (monic) leading column.
    std::vector<Row> by_lead(ncols);
    std::vector<bool> pivot(ncols, false);
    for (auto& row : rows) {
        // Eliminating a pivot only touches columns to its right, so one sweep suffices.
        auto it = row.begin();
        while (it != row.end()) {
            auto col = it->first;
            if (!pivot[col]) {
                ++it;
                continue;
            }
            Rational factor = it->second;
            for (const auto& [c, v] : by_lead[col]) {
                auto& slot = row[c];
                slot -= factor * v;
            }
            for (auto jt = row.begin(); jt != row.end();)
                jt = (jt->second == 0) ? row.erase(jt) : std::next(jt);
            it = row.upper_bound(col);
        }
        if (row.empty()) continue;
        auto lead = row.begin()->first;
        Rational lc = row.begin()->second;
        for (auto& [c, v] : row) v /= lc;
        pivot[lead] = true;
        by_lead[lead] = std::move(row);
    }
    return pivot;
}

struct QuotientDimension {
    int dimension = 0;
    std::vector<Monomial> basis;
};

/// dim Q[z]/(J + m^D) and a monomial basis of it.
inline QuotientDimension quotient_dimension(const std::vector<LocalPoly>& generators, std::size_t arity, int bound) {
    const auto monomials = monomials_below(arity, bound);
    std::map<Monomial, std::size_t> column;
    for (std::size_t i = 0; i < monomials.size(); ++i) column.emplace(monomials[i], i);

    std::vector<std::map<std::size_t, Rational>> rows;
    for (const auto& g : generators) {
        if (g.is_zero()) continue;
        for (const auto& shift : monomials) {
            std::map<std::size_t, Rational> row;
            for (const auto& [m, c] : g.terms()) {
                Monomial prod(arity);
                int deg = 0;
                for (std::size_t i = 0; i < arity; ++i) {
                    prod[i] = m[i] + shift[i];
                    deg += prod[i];
                }
                if (deg >= bound) continue;
                row[column.at(prod)] += c;
            }
            for (auto it = row.begin(); it != row.end();)
                it = (it->second == 0) ? row.erase(it) : std::next(it);
            if (!row.empty()) rows.push_back(std::move(row));
        }
    }
    auto pivot = pivot_columns(std::move(rows), monomials.size());
    QuotientDimension out;
    for (std::size_t i = monomials.size(); i-- > 0;)
        if (!pivot[i]) out.basis.push_back(monomials[i]);
    out.dimension = static_cast<int>(out.basis.size());
    return out;
}

}  // namespace detail

/// Dimension sequence d(D) = dim Q[z]/(Jac(f) + m^D) for D = 1..max_degree.
inline std::vector<int> milnor_dimension_sequence(const LocalPoly& f, int max_degree) {
    auto jac = jacobian_ideal(f);
    std::vector<int> out;
    for (int d = 1; d <= max_degree; ++d)
        out.push_back(detail::quotient_dimension(jac, f.arity(), d).dimension);
    return out;
}

inline MilnorResult milnor_number(const LocalPoly& f, int degree_cap = default_degree_cap) {
    if (degree_cap < 2) throw InputError("degree cap must be >= 2");
    if (f.arity() == 0) throw InputError("germ has no variables");
    if (f.constant_term() != 0) throw InputError("germ must vanish at the origin (f(0) != 0)");

    auto jac = jacobian_ideal(f);
    for (const auto& g : jac)
        if (g.constant_term() != 0) return MilnorResult{0, 1, {}, true};

    auto previous = detail::quotient_dimension(jac, f.arity(), 1);
    for (int d = 1; d < degree_cap; ++d) {
        auto next = detail::quotient_dimension(jac, f.arity(), d + 1);
        if (next.dimension == previous.dimension)
            return MilnorResult{previous.dimension, d, std::move(previous.basis), false};
        previous = std::move(next);
    }
    throw CapExceeded(degree_cap);
}

// ---------------------------------------------------------------------------
// Linear coordinate changes

using RationalMatrix = std::vector<std::vector<Rational>>;

inline Rational determinant(RationalMatrix a) {
    const std::size_t n = a.size();
    Rational det = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && a[piv][col] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t r = col + 1; r < n; ++r) {
            Rational factor = a[r][col] / a[col][col];
            if (factor == 0) continue;
            for (std::size_t c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
        }
    }
    return det;
}

/// f(M z): variable i is replaced by sum_j M[i][j] z_j.
inline LocalPoly apply_linear_change(const LocalPoly& f, const RationalMatrix& m) {
    const std::size_t n = f.arity();
    if (m.size() != n) throw InputError("substitution matrix has the wrong size");
    std::vector<LocalPoly> images;
    for (std::size_t i = 0; i < n; ++i) {
        if (m[i].size() != n) throw InputError("substitution matrix has the wrong size");
        LocalPoly row(f.variables());
        for (std::size_t j = 0; j < n; ++j) row += LocalPoly::variable(f.variables(), j) * m[i][j];
        images.push_back(std::move(row));
    }
    LocalPoly out(f.variables());
    for (const auto& [mono, c] : f.terms()) {
        LocalPoly term = LocalPoly::constant(f.variables(), c);
        for (std::size_t i = 0; i < n; ++i)
            if (mono[i] > 0) term = term * images[i].pow(mono[i]);
        out += term;
    }
    return out;
}

/// Invertible matrix with entries in [-2, 2], deterministic in `seed`.
inline RationalMatrix random_invertible_matrix(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> entry(-2, 2);
    for (;;) {
        RationalMatrix m(n, std::vector<Rational>(n));
        for (auto& row : m)
            for (auto& v : row) v = entry(rng);
        if (determinant(m) != 0) return m;
    }
}

inline LocalPoly random_linear_change(const LocalPoly& f, std::uint64_t seed) {
    return apply_linear_change(f, random_invertible_matrix(f.arity(), seed));
}

}  // namespace cydegen
