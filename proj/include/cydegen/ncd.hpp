#pragma once

// Log-canonical threshold and degeneracy index of a normal-crossings special
// fiber X0 = sum a_j E_j with evaluation divisor B = sum (b_j - 1) E_j, and
// the asymptotic report they determine for the L2 metric on the Hodge bundle.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cydegen/error.hpp"
#include "cydegen/rational.hpp"

namespace cydegen {

struct Component {
    std::string label;
    long a = 1;  ///< multiplicity in X0
    long b = 1;  ///< b - 1 is the coefficient in B

    Rational ratio() const { return make_rational(b, a); }

    friend bool operator==(const Component&, const Component&) = default;
};

/// Strata are sets of labels whose components meet.
using Stratum = std::set<std::string>;

struct NCDModel {
    int n = 1;  ///< fiber dimension
    std::vector<Component> components;
    std::set<Stratum> strata;

    friend bool operator==(const NCDModel&, const NCDModel&) = default;
};

/// Adds every nonempty subset of every stratum and all singletons.
inline std::set<Stratum> close_strata(const std::vector<Component>& components, const std::set<Stratum>& faces) {
    std::set<Stratum> out;
    for (const auto& c : components) out.insert({c.label});
    for (const auto& face : faces) {
        std::vector<std::string> items(face.begin(), face.end());
        if (items.size() > 20) {
            out.insert(face);  // too large to enumerate; validate() reports it anyway
            continue;
        }
        for (unsigned long mask = 1; mask < (1ul << items.size()); ++mask) {
            Stratum s;
            for (std::size_t i = 0; i < items.size(); ++i)
                if (mask & (1ul << i)) s.insert(items[i]);
            out.insert(std::move(s));
        }
    }
    return out;
}

inline std::vector<std::string> validate(const NCDModel& model) {
    std::vector<std::string> out;
    if (model.n < 1) out.push_back("fiber dimension n must be >= 1 (got " + std::to_string(model.n) + ")");
    if (model.components.empty()) out.push_back("model has no components");

    std::set<std::string> labels;
    bool some_b_is_one = false;
    for (const auto& c : model.components) {
        if (!labels.insert(c.label).second) out.push_back("duplicate component label '" + c.label + "'");
        if (c.a < 1) out.push_back("component '" + c.label + "' has multiplicity a < 1");
        if (c.b < 1) out.push_back("component '" + c.label + "' has b < 1");
        if (c.b == 1) some_b_is_one = true;
    }
    if (!model.components.empty() && !some_b_is_one)
        out.push_back("B contains the full fiber: no component has b = 1");

    for (const auto& c : model.components)
        if (!model.strata.count({c.label})) out.push_back("singleton stratum {" + c.label + "} is missing");

    for (const auto& s : model.strata) {
        std::string shown;
        for (const auto& l : s) shown += (shown.empty() ? "" : ",") + l;
        if (s.empty()) {
            out.push_back("empty stratum");
            continue;
        }
        for (const auto& l : s)
            if (!labels.count(l)) out.push_back("stratum {" + shown + "} names unknown component '" + l + "'");
        if (static_cast<long>(s.size()) > model.n + 1)
            out.push_back("stratum exceeds n+1: {" + shown + "} has " + std::to_string(s.size()) +
                          " components, n = " + std::to_string(model.n));
        if (s.size() > 1 && s.size() <= 20) {
            for (const auto& drop : s) {
                Stratum sub = s;
                sub.erase(drop);
                if (!model.strata.count(sub)) {
                    out.push_back("strata not closed under subsets: {" + shown + "} present but a face is missing");
                    break;
                }
            }
        }
    }
    return out;
}

namespace detail {
inline void require_valid(const NCDModel& model) {
    auto v = validate(model);
    if (!v.empty()) throw InvalidModel(std::move(v));
}
}  // namespace detail

/// c = min_j b_j / a_j
inline Rational lct(const NCDModel& model) {
    detail::require_valid(model);
    Rational best = model.components.front().ratio();
    for (const auto& c : model.components) best = std::min(best, c.ratio());
    return best;
}

/// beta = (largest stratum made only of components attaining the lct) - 1
inline int degeneracy_index(const NCDModel& model) {
    const Rational c = lct(model);
    std::set<std::string> minimal;
    for (const auto& comp : model.components)
        if (comp.ratio() == c) minimal.insert(comp.label);
    std::size_t best = 0;
    for (const auto& s : model.strata)
        if (std::all_of(s.begin(), s.end(), [&](const auto& l) { return minimal.count(l) > 0; }))
            best = std::max(best, s.size());
    return static_cast<int>(best) - 1;
}

/// Coefficients of -log|eta|^2 = alpha log|s|^2 - beta log|log|s|^2| + O(1).
struct AsymptoticReport {
    int n = 1;
    Rational lct;
    Rational alpha;
    int beta = 0;
    /// r with monodromy eigenvalue exp(-2 pi i r) on the top graded piece; equals alpha.
    Rational rotation;
    int weight = 0;

    /// (Re, Im) of exp(-2 pi i r).
    std::pair<double, double> eigenvalue() const {
        const double angle = -2.0 * std::numbers::pi * rotation.get_d();
        return {std::cos(angle), std::sin(angle)};
    }

    friend bool operator==(const AsymptoticReport&, const AsymptoticReport&) = default;
};

inline AsymptoticReport theorem_a_report(const NCDModel& model) {
    AsymptoticReport r;
    r.n = model.n;
    r.lct = lct(model);
    r.alpha = Rational(1) - r.lct;
    r.beta = degeneracy_index(model);
    r.rotation = r.alpha;
    r.weight = model.n + r.beta;
    return r;
}

/// Blow-up model of a fiber with `num_sing` ordinary double points: the strict
/// transform (a=1, b=1) and one exceptional divisor (a=2, b=n+1) per point,
/// each meeting only the strict transform.
inline NCDModel quadratic_model(int n, int num_sing) {
    if (n < 1) throw InputError("quadratic model needs n >= 1");
    if (num_sing < 1) throw InputError("quadratic model needs at least one singular point");
    NCDModel m;
    m.n = n;
    m.components.push_back({"strict", 1, 1});
    for (int k = 1; k <= num_sing; ++k) {
        std::string label = "E" + std::to_string(k);
        m.components.push_back({label, 2, n + 1});
        m.strata.insert({"strict", label});
    }
    m.strata = close_strata(m.components, m.strata);
    return m;
}

}  // namespace cydegen
