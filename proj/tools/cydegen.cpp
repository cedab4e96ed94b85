// cydegen: command-line front end for the cydegen library.
//
// Exit codes: 0 success, 1 a check or regression comparison failed,
// 2 bad input, 3 a resource cap was hit.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cydegen/cydegen.hpp"

namespace {

using namespace cydegen;
namespace exit_code = cydegen::config::exit_code;
constexpr const auto& defaults = cydegen::config::defaults;

enum class Format { text, json };

struct Output {
    Format format = Format::text;
    bool json() const { return format == Format::json; }
    void emit(const cydegen::json& doc) const { std::cout << doc.dump(2) << '\n'; }
};

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) throw InputError("empty entry in list '" + text + "'");
        out.push_back(item.substr(b, e - b + 1));
    }
    if (out.empty()) throw InputError("empty list");
    return out;
}

std::string monomial_text(const Monomial& m, const std::vector<std::string>& vars) {
    std::string out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += vars[i];
        if (m[i] > 1) out += '^' + std::to_string(m[i]);
    }
    return out.empty() ? "1" : out;
}

// ---------------------------------------------------------------------------

struct MilnorArgs {
    std::string poly;
    std::string variables;
    int cap = defaults.degree_cap;
};

int run_milnor(const MilnorArgs& a, const Output& out) {
    LocalPoly f = a.variables.empty() ? parse_poly(a.poly) : parse_poly(a.poly, split_list(a.variables));
    MilnorResult r = milnor_number(f, a.cap);
    if (out.json()) {
        auto doc = to_json(r, f.variables());
        doc["polynomial"] = f.to_string();
        out.emit(doc);
        return exit_code::success;
    }
    std::cout << "f = " << f.to_string() << '\n';
    if (r.smooth_germ) std::cout << "smooth germ (a partial derivative is a unit)\n";
    std::cout << "mu = " << r.mu << '\n' << "stabilization degree = " << r.stabilization_degree << '\n';
    std::cout << "monomial basis:";
    for (const auto& m : r.monomial_basis) std::cout << ' ' << monomial_text(m, f.variables());
    std::cout << '\n';
    return exit_code::success;
}

// ---------------------------------------------------------------------------

int run_lct(const std::string& path, const Output& out) {
    NCDModel model = load_ncd_model(path);
    AsymptoticReport r = theorem_a_report(model);
    if (out.json()) {
        out.emit(to_json(r));
        return exit_code::success;
    }
    auto [re, im] = r.eigenvalue();
    std::cout << "n = " << r.n << '\n'
              << "lct c = " << r.lct << '\n'
              << "alpha = " << r.alpha << '\n'
              << "beta = " << r.beta << '\n'
              << "monodromy rotation r = " << r.rotation << "  (eigenvalue exp(-2 pi i r) = " << re
              << (im < 0 ? " - " : " + ") << std::abs(im) << "i)\n"
              << "weight = " << r.weight << '\n'
              << "-log|eta|^2 = (" << r.alpha << ") log|s|^2 - " << r.beta << " log|log|s|^2| + continuous\n";
    return exit_code::success;
}

// ---------------------------------------------------------------------------

int run_euler(int ambient, int degree, const Output& out) {
    Integer chi = euler_hypersurface(ambient, degree);
    if (out.json()) {
        out.emit({{"ambient_dim", ambient}, {"degree", degree}, {"euler_characteristic", chi.get_str()}});
        return exit_code::success;
    }
    std::cout << "chi(degree " << degree << " hypersurface in P^" << ambient << ") = " << chi << '\n';
    return exit_code::success;
}

// ---------------------------------------------------------------------------

struct YoshikawaArgs {
    int n = 2;
    std::string milnor;
    std::string delta_chi;
};

int run_yoshikawa(const YoshikawaArgs& a, const Output& out) {
    if (a.milnor.empty() == a.delta_chi.empty()) throw InputError("give exactly one of --milnor or --delta-chi");
    cydegen::json doc{{"n", a.n}};
    Integer delta;
    if (!a.milnor.empty()) {
        std::vector<long> mus;
        for (const auto& item : split_list(a.milnor)) {
            Rational v = parse_rational(item);
            if (v.get_den() != 1 || !v.get_num().fits_slong_p()) throw InputError("bad Milnor number '" + item + "'");
            mus.push_back(v.get_num().get_si());
        }
        delta = delta_chi_from_milnor(a.n, mus);
        doc["milnor_numbers"] = mus;
        doc["isolated"] = to_fraction_string(yoshikawa_degree_isolated(a.n, mus));
    } else {
        Rational v = parse_rational(a.delta_chi);
        if (v.get_den() != 1) throw InputError("--delta-chi must be an integer");
        delta = v.get_num();
    }
    doc["delta_chi"] = delta.get_str();
    doc["hypersurface_family"] = to_fraction_string(yoshikawa_degree_hypersurface_family(a.n, delta));
    if (a.n == 2) doc["kulikov_surface"] = to_fraction_string(yoshikawa_degree_kulikov_surface(delta));
    if (out.json()) {
        out.emit(doc);
        return exit_code::success;
    }
    std::cout << "n = " << a.n << ", delta_chi = " << delta << '\n';
    if (doc.contains("isolated"))
        std::cout << "degree (isolated singularities) = " << doc["isolated"].get<std::string>() << '\n';
    std::cout << "degree (hypersurface family)    = " << doc["hypersurface_family"].get<std::string>() << '\n';
    if (doc.contains("kulikov_surface"))
        std::cout << "degree (Kulikov surface)        = " << doc["kulikov_surface"].get<std::string>() << '\n';
    return exit_code::success;
}

// ---------------------------------------------------------------------------

struct BcovArgs {
    int n = 0;
    std::string chi_general, chi_special;
    std::string alpha = "0";
    int beta = 0;
    std::string b_correction = "0";
};

int run_alpha_bcov(const BcovArgs& a, const Output& out) {
    auto integer = [](const std::string& text, const char* what) {
        Rational v = parse_rational(text);
        if (v.get_den() != 1) throw InputError(std::string(what) + " must be an integer");
        return Integer(v.get_num());
    };
    BCOVReport r = alpha_bcov(a.n, integer(a.chi_general, "--chi-general"), integer(a.chi_special, "--chi-special"),
                              parse_rational(a.alpha), a.beta, parse_rational(a.b_correction));
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
    if (out.json()) {
        out.emit(to_json(r));
        return exit_code::success;
    }
    std::cout << "delta_chi = " << r.delta_chi << '\n'
              << "alpha_BCOV = " << r.alpha_bcov << '\n'
              << "loglog coefficient = " << r.loglog_coefficient << '\n'
              << r.asymptotic_line() << '\n';
    return exit_code::success;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    int n_max = defaults.verify_n_max;
    bool parallel = false;
};

struct CheckOutcome {
    std::string identity;
    int n = 0;
    bool ok = false;
    double seconds = 0;
};

int run_verify(const VerifyArgs& a, const Output& out) {
    if (a.n_max < 1 || a.n_max > defaults.verify_hard_cap)
        throw InputError("--n-max " + std::to_string(a.n_max) + " exceeds the cap: need 1 <= n_max <= " +
                         std::to_string(defaults.verify_hard_cap));
    const std::vector<std::pair<std::string, std::function<bool(int)>>> identities{
        {"verify_koszul", verify_koszul},
        {"verify_derivative_classes", verify_derivative_classes},
        {"verify_omega", verify_omega},
    };
    auto timed = [](const std::string& name, const std::function<bool(int)>& check, int n) {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = check(n);
        std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        return CheckOutcome{name, n, ok, dt.count()};
    };

    std::vector<CheckOutcome> results;
    const auto start = std::chrono::steady_clock::now();
    if (a.parallel) {
        std::vector<std::future<CheckOutcome>> jobs;
        for (const auto& [name, check] : identities)
            for (int n = 1; n <= a.n_max; ++n) jobs.push_back(std::async(std::launch::async, timed, name, check, n));
        for (auto& j : jobs) results.push_back(j.get());
    } else {
        for (const auto& [name, check] : identities)
            for (int n = 1; n <= a.n_max; ++n) results.push_back(timed(name, check, n));
    }
    std::chrono::duration<double> total = std::chrono::steady_clock::now() - start;

    const CheckOutcome* first_failure = nullptr;
    for (const auto& r : results)
        if (!r.ok) {
            first_failure = &r;
            break;
        }

    if (out.json()) {
        cydegen::json checks = cydegen::json::array();
        for (const auto& r : results)
            checks.push_back({{"identity", r.identity}, {"n", r.n}, {"ok", r.ok}, {"seconds", r.seconds}});
        cydegen::json doc{{"n_max", a.n_max}, {"checks", checks}, {"total_seconds", total.count()},
                          {"ok", first_failure == nullptr}};
        if (first_failure) doc["first_failure"] = {{"identity", first_failure->identity}, {"n", first_failure->n}};
        out.emit(doc);
    } else {
        for (const auto& [name, check] : identities) {
            double seconds = 0;
            bool ok = true;
            for (const auto& r : results)
                if (r.identity == name) {
                    seconds += r.seconds;
                    ok = ok && r.ok;
                }
            std::printf("%-27s n=1..%d  %s  %.3f s\n", name.c_str(), a.n_max, ok ? "ok    " : "FAILED", seconds);
        }
        std::printf("total %.3f s\n", total.count());
        if (first_failure)
            std::cout << "first failure: " << first_failure->identity << " at n = " << first_failure->n << '\n';
    }
    return first_failure ? exit_code::check_failed : exit_code::success;
}

// ---------------------------------------------------------------------------

struct FitArgs {
    double s_min = defaults.fit_s_min;
    double s_max = defaults.fit_s_max;
    int count = defaults.fit_count;
    int corrections = defaults.fit_correction_terms;
    double alpha_tol = defaults.fit_alpha_tolerance;
    double beta_tol = defaults.fit_beta_tolerance;
    std::string csv_out;
    std::string csv_in;
    std::optional<double> expect_alpha, expect_beta;
};

void print_fit(const FitResult& r) {
    std::printf("alpha_hat = %.6f\nbeta_hat  = %.6f\nC_hat     = %.6f\n", r.alpha_hat, r.beta_hat, r.const_hat);
    for (std::size_t k = 0; k < r.corrections.size(); ++k)
        std::printf("d%zu        = %.6f   (coefficient of 1/log|s|^%zu)\n", k + 1, r.corrections[k], 2 * (k + 1));
    std::printf("residual  = %.3e\ncondition = %.3e\n", r.residual_norm, r.condition_estimate);
}

struct Comparison {
    double alpha = 0, beta = 0;
    bool ok = false;
};

Comparison compare(const FitResult& r, double alpha, double beta, const FitArgs& a) {
    return {alpha, beta,
            std::abs(r.alpha_hat - alpha) <= a.alpha_tol && std::abs(r.beta_hat - beta) <= a.beta_tol};
}

int report_fit(const FitResult& r, const std::optional<Comparison>& cmp, const FitArgs& a, const Output& out,
               cydegen::json doc) {
    if (out.json()) {
        doc["fit"] = to_json(r);
        if (cmp) {
            doc["expected"] = {{"alpha", cmp->alpha}, {"beta", cmp->beta}};
            doc["tolerance"] = {{"alpha", a.alpha_tol}, {"beta", a.beta_tol}};
            doc["status"] = cmp->ok ? "PASS" : "FAIL";
        }
        out.emit(doc);
    } else {
        print_fit(r);
        if (cmp)
            std::printf("expected alpha = %g, beta = %g (tolerance %g, %g): %s\n", cmp->alpha, cmp->beta, a.alpha_tol,
                        a.beta_tol, cmp->ok ? "PASS" : "FAIL");
    }
    return (cmp && !cmp->ok) ? exit_code::check_failed : exit_code::success;
}

int run_fit_legendre(const FitArgs& a, const Output& out) {
    if (!(a.s_min > 0 && a.s_min < a.s_max && a.s_max < 0.5))
        throw InputError("need 0 < s_min < s_max < 1/2");
    std::vector<PeriodSample> periods;
    std::vector<FitSample> samples;
    for (double s : log_spaced(a.s_min, a.s_max, a.count)) {
        periods.push_back(legendre_l2(s));
        samples.push_back({s, -std::log(periods.back().l2_norm)});
    }
    if (!a.csv_out.empty()) {
        std::ofstream csv(a.csv_out);
        if (!csv) throw InputError("cannot write '" + a.csv_out + "'");
        write_samples_csv(csv, periods);
    }
    FitResult r = fit_asymptotics(samples, {a.corrections, defaults.fit_rank_tolerance});
    // The Legendre family acquires one node: the n = 1 quadratic model.
    AsymptoticReport predicted = theorem_a_report(quadratic_model(1, 1));
    Comparison cmp = compare(r, predicted.alpha.get_d(), predicted.beta, a);
    return report_fit(r, cmp, a, out,
                      {{"source", "legendre"}, {"s_min", a.s_min}, {"s_max", a.s_max}, {"count", a.count}});
}

int run_fit_csv(const FitArgs& a, const Output& out) {
    std::ifstream in(a.csv_in);
    if (!in) throw InputError("cannot open '" + a.csv_in + "'");
    auto samples = read_samples_csv(in);
    FitResult r = fit_asymptotics(samples, {a.corrections, defaults.fit_rank_tolerance});
    std::optional<Comparison> cmp;
    if (a.expect_alpha || a.expect_beta) cmp = compare(r, a.expect_alpha.value_or(r.alpha_hat), a.expect_beta.value_or(r.beta_hat), a);
    return report_fit(r, cmp, a, out, {{"source", "csv"}, {"path", a.csv_in}, {"count", samples.size()}});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariants of degenerating Calabi-Yau families"};
    app.require_subcommand(1);
    app.fallthrough();
    Output out;
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    MilnorArgs milnor;
    auto* milnor_cmd = app.add_subcommand("milnor", "Milnor number of an isolated hypersurface germ");
    milnor_cmd->add_option("poly", milnor.poly, "Polynomial, e.g. \"x^3+y^5\"")->required();
    milnor_cmd->add_option("-v,--variables", milnor.variables, "Comma-separated variables (default: order of appearance)");
    milnor_cmd->add_option("--cap", milnor.cap, "Largest power of the maximal ideal tried")->capture_default_str();

    std::string model_path;
    auto* lct_cmd = app.add_subcommand("lct", "Asymptotic report for an NCD model file");
    lct_cmd->add_option("model", model_path, "NCD model JSON file")->required();

    int ambient = 0, degree = 0;
    auto* euler_cmd = app.add_subcommand("euler", "Euler characteristic of a smooth hypersurface");
    euler_cmd->add_option("--ambient", ambient, "N for P^N")->required();
    euler_cmd->add_option("--degree", degree, "Hypersurface degree")->required();

    YoshikawaArgs yosh;
    auto* yosh_cmd = app.add_subcommand("yoshikawa", "Degree of the Yoshikawa class by each available route");
    yosh_cmd->add_option("-n", yosh.n, "Fiber dimension")->required();
    yosh_cmd->add_option("--milnor", yosh.milnor, "Comma-separated Milnor numbers");
    yosh_cmd->add_option("--delta-chi", yosh.delta_chi, "chi(X_inf) - chi(X_0)");

    BcovArgs bcov;
    auto* bcov_cmd = app.add_subcommand("alpha-bcov", "Leading coefficient of the BCOV invariant");
    bcov_cmd->add_option("-n", bcov.n, "Fiber dimension")->required();
    bcov_cmd->add_option("--chi-general", bcov.chi_general, "chi of the general fiber")->required();
    bcov_cmd->add_option("--chi-special", bcov.chi_special, "chi of the special fiber")->required();
    bcov_cmd->add_option("--alpha", bcov.alpha, "alpha as p/q")->capture_default_str();
    bcov_cmd->add_option("--beta", bcov.beta, "beta")->capture_default_str();
    bcov_cmd->add_option("--b-correction", bcov.b_correction, "int_B c_n(Omega_{X/S}) as p/q")->capture_default_str();

    VerifyArgs verify;
    auto* verify_cmd = app.add_subcommand("verify", "Exact characteristic class identity checks");
    verify_cmd->add_option("--n-max", verify.n_max, "Check n = 1..n_max")->capture_default_str();
    verify_cmd->add_flag("--parallel", verify.parallel, "Run the checks concurrently");

    FitArgs fit;
    auto* fit_cmd = app.add_subcommand("fit", "Least-squares fit of -log|eta|^2");
    fit_cmd->require_subcommand(1);
    auto add_fit_options = [&](CLI::App* cmd) {
        cmd->add_option("--corrections", fit.corrections, "Number of 1/log|s|^2 basis terms")->capture_default_str();
        cmd->add_option("--alpha-tol", fit.alpha_tol, "Tolerance on alpha_hat")->capture_default_str();
        cmd->add_option("--beta-tol", fit.beta_tol, "Tolerance on beta_hat")->capture_default_str();
    };
    auto* legendre_cmd = fit_cmd->add_subcommand("legendre", "Fit the Legendre family y^2 = x(x-1)(x-s)");
    legendre_cmd->add_option("--s-min", fit.s_min, "Smallest s")->capture_default_str();
    legendre_cmd->add_option("--s-max", fit.s_max, "Largest s")->capture_default_str();
    legendre_cmd->add_option("-n,--count", fit.count, "Number of log-spaced samples")->capture_default_str();
    legendre_cmd->add_option("--csv", fit.csv_out, "Write samples as s,l2_norm,neglog");
    add_fit_options(legendre_cmd);
    auto* csv_cmd = fit_cmd->add_subcommand("csv", "Fit samples read from a CSV file");
    csv_cmd->add_option("path", fit.csv_in, "CSV with columns s,l2_norm,neglog")->required();
    csv_cmd->add_option("--expect-alpha", fit.expect_alpha, "Compare alpha_hat against this value");
    csv_cmd->add_option("--expect-beta", fit.expect_beta, "Compare beta_hat against this value");
    add_fit_options(csv_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_code::input_error;
    }
    out.format = format == "json" ? Format::json : Format::text;

    try {
        if (*milnor_cmd) return run_milnor(milnor, out);
        if (*lct_cmd) return run_lct(model_path, out);
        if (*euler_cmd) return run_euler(ambient, degree, out);
        if (*yosh_cmd) return run_yoshikawa(yosh, out);
        if (*bcov_cmd) return run_alpha_bcov(bcov, out);
        if (*verify_cmd) return run_verify(verify, out);
        if (*legendre_cmd) return run_fit_legendre(fit, out);
        if (*csv_cmd) return run_fit_csv(fit, out);
    } catch (const SyntaxError& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (*milnor_cmd) std::cerr << "  " << milnor.poly << '\n' << "  " << std::string(e.offset(), ' ') << "^\n";
        return exit_code::input_error;
    } catch (const InvalidModel& e) {
        std::cerr << "error: invalid NCD model\n";
        for (const auto& v : e.violations()) std::cerr << "  - " << v << '\n';
        return exit_code::input_error;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code::cap_exceeded;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code::input_error;
    } catch (const DegenerateDesign& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code::input_error;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code::check_failed;
    }
    return exit_code::input_error;
}
