#pragma once

// JSON documents for models and reports, and the CSV sample format.
// Exact quantities travel as strings: rationals as "p/q", big integers as
// decimal strings. Small counts (n, beta, mu, ...) are JSON numbers.

#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cydegen/error.hpp"
#include "cydegen/invariants.hpp"
#include "cydegen/milnor.hpp"
#include "cydegen/ncd.hpp"
#include "cydegen/periodfit.hpp"
#include "cydegen/rational.hpp"

namespace cydegen {

using json = nlohmann::json;

namespace detail {

inline Rational rational_field(const json& j, const char* key) {
    if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    const auto& v = j.at(key);
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return Rational(v.get<long>());
    throw InputError(std::string("field '") + key + "' must be a \"p/q\" string");
}

inline Integer integer_field(const json& j, const char* key) {
    Rational r = rational_field(j, key);
    if (r.get_den() != 1) throw InputError(std::string("field '") + key + "' must be an integer");
    return r.get_num();
}

template <typename T>
T number_field(const json& j, const char* key) {
    if (!j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
    const auto& v = j.at(key);
    if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) throw InputError(std::string("field '") + key + "' must be an integer");
    } else {
        if (!v.is_number()) throw InputError(std::string("field '") + key + "' must be a number");
    }
    return v.get<T>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// NCD model documents
//
//   { "n": 2,
//     "components": [ {"label": "X", "a": 1, "b": 1}, ... ],
//     "strata": [ ["X", "E1"], ... ] }
//
// Strata list intersecting subsets; the loader adds every face and every
// singleton, then the model is validated (some b = 1, strata of size <= n+1).

inline json to_json(const NCDModel& m) {
    json comps = json::array();
    for (const auto& c : m.components) comps.push_back({{"label", c.label}, {"a", c.a}, {"b", c.b}});
    json strata = json::array();
    for (const auto& s : m.strata) strata.push_back(std::vector<std::string>(s.begin(), s.end()));
    return {{"n", m.n}, {"components", comps}, {"strata", strata}};
}

/// Parses and closes the strata; does not validate.
inline NCDModel ncd_model_from_json(const json& j) {
    if (!j.is_object()) throw InputError("NCD model must be a JSON object");
    NCDModel m;
    m.n = detail::number_field<int>(j, "n");
    if (!j.contains("components") || !j.at("components").is_array())
        throw InputError("field 'components' must be an array");
    for (const auto& c : j.at("components")) {
        if (!c.is_object() || !c.contains("label") || !c.at("label").is_string())
            throw InputError("each component needs a string 'label'");
        m.components.push_back(
            {c.at("label").get<std::string>(), detail::number_field<long>(c, "a"), detail::number_field<long>(c, "b")});
    }
    std::set<Stratum> faces;
    if (j.contains("strata")) {
        if (!j.at("strata").is_array()) throw InputError("field 'strata' must be an array of label arrays");
        for (const auto& s : j.at("strata")) {
            if (!s.is_array()) throw InputError("each stratum must be an array of labels");
            Stratum face;
            for (const auto& l : s) {
                if (!l.is_string()) throw InputError("stratum labels must be strings");
                face.insert(l.get<std::string>());
            }
            faces.insert(std::move(face));
        }
    }
    m.strata = close_strata(m.components, faces);
    return m;
}

inline NCDModel load_ncd_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open model file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("model file '" + path + "' is not valid JSON: " + e.what());
    }
    return ncd_model_from_json(j);
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const MilnorResult& r, const std::vector<std::string>& variables) {
    json basis = json::array();
    for (const auto& m : r.monomial_basis) basis.push_back(std::vector<int>(m.begin(), m.end()));
    return {{"mu", r.mu},
            {"stabilization_degree", r.stabilization_degree},
            {"smooth_germ", r.smooth_germ},
            {"variables", variables},
            {"monomial_basis", basis}};
}

inline MilnorResult milnor_result_from_json(const json& j) {
    MilnorResult r;
    r.mu = detail::number_field<int>(j, "mu");
    r.stabilization_degree = detail::number_field<int>(j, "stabilization_degree");
    r.smooth_germ = j.value("smooth_germ", false);
    for (const auto& m : j.at("monomial_basis")) {
        Monomial mono;
        for (const auto& e : m) mono.push_back(static_cast<std::uint16_t>(e.get<int>()));
        r.monomial_basis.push_back(std::move(mono));
    }
    return r;
}

inline json to_json(const AsymptoticReport& r) {
    auto [re, im] = r.eigenvalue();
    return {{"n", r.n},
            {"lct", to_fraction_string(r.lct)},
            {"alpha", to_fraction_string(r.alpha)},
            {"beta", r.beta},
            {"monodromy_rotation", to_fraction_string(r.rotation)},
            {"monodromy_eigenvalue", {{"re", re}, {"im", im}}},
            {"weight", r.weight}};
}

inline AsymptoticReport asymptotic_report_from_json(const json& j) {
    AsymptoticReport r;
    r.n = detail::number_field<int>(j, "n");
    r.lct = detail::rational_field(j, "lct");
    r.alpha = detail::rational_field(j, "alpha");
    r.beta = detail::number_field<int>(j, "beta");
    r.rotation = detail::rational_field(j, "monodromy_rotation");
    r.weight = detail::number_field<int>(j, "weight");
    return r;
}

inline json to_json(const BCOVReport& r) {
    return {{"n", r.n},
            {"chi_general", r.chi_general.get_str()},
            {"chi_special", r.chi_special.get_str()},
            {"delta_chi", r.delta_chi.get_str()},
            {"alpha", to_fraction_string(r.alpha)},
            {"beta", r.beta},
            {"b_correction", to_fraction_string(r.b_correction)},
            {"alpha_bcov", to_fraction_string(r.alpha_bcov)},
            {"loglog_coefficient", to_fraction_string(r.loglog_coefficient)},
            {"asymptotic", r.asymptotic_line()},
            {"warnings", r.warnings}};
}

inline BCOVReport bcov_report_from_json(const json& j) {
    BCOVReport r;
    r.n = detail::number_field<int>(j, "n");
    r.chi_general = detail::integer_field(j, "chi_general");
    r.chi_special = detail::integer_field(j, "chi_special");
    r.delta_chi = detail::integer_field(j, "delta_chi");
    r.alpha = detail::rational_field(j, "alpha");
    r.beta = detail::number_field<int>(j, "beta");
    r.b_correction = detail::rational_field(j, "b_correction");
    r.alpha_bcov = detail::rational_field(j, "alpha_bcov");
    r.loglog_coefficient = detail::rational_field(j, "loglog_coefficient");
    r.warnings = j.value("warnings", std::vector<std::string>{});
    return r;
}

inline json to_json(const FitResult& r) {
    return {{"alpha_hat", r.alpha_hat},
            {"beta_hat", r.beta_hat},
            {"const_hat", r.const_hat},
            {"corrections", r.corrections},
            {"correction_terms", r.correction_terms},
            {"residual_norm", r.residual_norm},
            {"condition_estimate", r.condition_estimate}};
}

inline FitResult fit_result_from_json(const json& j) {
    FitResult r;
    r.alpha_hat = detail::number_field<double>(j, "alpha_hat");
    r.beta_hat = detail::number_field<double>(j, "beta_hat");
    r.const_hat = detail::number_field<double>(j, "const_hat");
    r.corrections = j.value("corrections", std::vector<double>{});
    r.correction_terms = j.value("correction_terms", 0);
    r.residual_norm = detail::number_field<double>(j, "residual_norm");
    r.condition_estimate = detail::number_field<double>(j, "condition_estimate");
    return r;
}

// ---------------------------------------------------------------------------
// CSV samples: header "s,l2_norm,neglog", one row per sample point.

inline void write_samples_csv(std::ostream& out, const std::vector<PeriodSample>& samples) {
    out << "s,l2_norm,neglog\n";
    out << std::setprecision(std::numeric_limits<double>::max_digits10);
    for (const auto& p : samples) out << p.s << ',' << p.l2_norm << ',' << -std::log(p.l2_norm) << '\n';
}

/// Reads (s, neglog) pairs. Two-column files are read as (s, value).
inline std::vector<FitSample> read_samples_csv(std::istream& in) {
    std::vector<FitSample> out;
    std::string line;
    std::size_t lineno = 0;
    int value_column = -1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (value_column < 0 && !cells.empty() && cells[0] == "s") {
            for (std::size_t i = 1; i < cells.size(); ++i)
                if (cells[i] == "neglog") value_column = static_cast<int>(i);
            if (value_column < 0) {
                if (cells.size() != 2) throw InputError("CSV header must contain a 'neglog' column");
                value_column = 1;
            }
            continue;
        }
        if (value_column < 0) value_column = cells.size() >= 3 ? 2 : 1;
        if (static_cast<int>(cells.size()) <= value_column)
            throw InputError("CSV line " + std::to_string(lineno) + " has too few columns");
        try {
            out.push_back({std::stod(cells[0]), std::stod(cells[value_column])});
        } catch (const std::exception&) {
            throw InputError("CSV line " + std::to_string(lineno) + " has a non-numeric cell");
        }
    }
    return out;
}

}  // namespace cydegen
