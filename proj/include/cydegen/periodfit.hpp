#pragma once

// L2 norms of the Legendre family y^2 = x(x-1)(x-s) from AGM periods, and a
// least-squares fit of -log|eta|^2 against the degeneration shape
// alpha log|s|^2 - beta log|log|s|^2| + C (+ optional 1/log|s|^2 corrections).

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "cydegen/config.hpp"
#include "cydegen/error.hpp"

namespace cydegen {

inline constexpr double agm_tolerance = 1e-15;
inline constexpr int agm_max_steps = 60;

/// Arithmetic-geometric mean with the "right" square-root branch:
/// |a' - b'| <= |a' + b'| at every step.
inline std::complex<double> agm(std::complex<double> a, std::complex<double> b) {
    if (a == 0.0 || b == 0.0) throw InputError("agm arguments must be nonzero");
    if (std::abs(a + b) <= 1e-300 * std::abs(a)) throw InputError("agm arguments must not be antipodal");
    for (int step = 0; step < agm_max_steps; ++step) {
        if (std::abs(a - b) <= agm_tolerance * std::abs(a)) return a;
        std::complex<double> next_a = 0.5 * (a + b);
        std::complex<double> next_b = std::sqrt(a * b);
        if (std::abs(next_a - next_b) > std::abs(next_a + next_b)) next_b = -next_b;
        a = next_a;
        b = next_b;
    }
    if (std::abs(a - b) <= agm_tolerance * std::abs(a)) return a;
    throw NonConvergence("agm did not converge in " + std::to_string(agm_max_steps) + " steps");
}

/// Complete elliptic integral K(m) = pi / (2 agm(1, sqrt(1 - m))), 0 <= m < 1.
inline double elliptic_k(double m) {
    if (!(m >= 0.0 && m < 1.0)) throw InputError("elliptic_k needs 0 <= m < 1");
    return std::numbers::pi / (2.0 * agm(1.0, std::sqrt(1.0 - m)).real());
}

struct PeriodSample {
    double s = 0;
    /// Cycle around [0, s]: 2 int_0^s dx/y = 4 K(s), real.
    std::complex<double> omega1;
    /// Cycle around [s, 1]: 4 i K(1 - s).
    std::complex<double> omega2;
    /// |int eta ^ conj(eta)| = 2 |Im(conj(omega1) omega2)|
    double l2_norm = 0;
};

inline PeriodSample legendre_l2(double s) {
    if (!(s > 0.0 && s < 0.5)) throw InputError("Legendre parameter s must lie in (0, 1/2)");
    PeriodSample out;
    out.s = s;
    out.omega1 = 4.0 * elliptic_k(s);
    out.omega2 = std::complex<double>(0.0, 4.0 * elliptic_k(1.0 - s));
    out.l2_norm = 2.0 * std::abs(std::imag(std::conj(out.omega1) * out.omega2));
    return out;
}

/// `count` values log-spaced over [s_min, s_max], ascending.
inline std::vector<double> log_spaced(double s_min, double s_max, int count) {
    if (count < 2) throw InputError("need at least two sample points");
    if (!(s_min > 0 && s_min < s_max)) throw InputError("need 0 < s_min < s_max");
    std::vector<double> out(count);
    const double lo = std::log(s_min), hi = std::log(s_max);
    for (int i = 0; i < count; ++i) out[i] = std::exp(lo + (hi - lo) * i / (count - 1));
    return out;
}

struct FitSample {
    double s = 0;
    double value = 0;
};

struct FitOptions {
    /// Extra basis functions 1/L, ..., 1/L^k with L = log|s|^2, modelling the
    /// O(1/log|s|) remainder of the degeneration shape. 0 gives the bare
    /// three-term fit.
    int correction_terms = config::defaults.fit_correction_terms;
    double rank_tolerance = config::defaults.fit_rank_tolerance;
};

struct FitResult {
    double alpha_hat = 0;
    double beta_hat = 0;
    double const_hat = 0;
    std::vector<double> corrections;
    double residual_norm = 0;
    /// sigma_max / sigma_min of the column-scaled design matrix.
    double condition_estimate = 0;
    int correction_terms = 0;
};

/// Linear least squares of v against {log|s|^2, -log|log|s|^2|, 1, 1/log|s|^2, ...}.
inline FitResult fit_asymptotics(const std::vector<FitSample>& samples, const FitOptions& options = {}) {
    if (options.correction_terms < 0) throw InputError("correction term count must be >= 0");
    const int columns = 3 + options.correction_terms;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double s = samples[i].s;
        if (!(s > 0.0 && s < 1.0)) throw InputError("fit samples need s in (0, 1)");
        if (!std::isfinite(samples[i].value)) throw InputError("fit sample value is not finite");
        for (std::size_t j = 0; j < i; ++j)
            if (samples[j].s == s) throw DegenerateDesign("repeated sample point s = " + std::to_string(s));
    }
    if (samples.size() < 4 || static_cast<int>(samples.size()) < columns)
        throw InputError("fit needs at least max(4, number of basis functions) samples");

    // Extended precision keeps in-span data recoverable for poorly conditioned grids.
    using Matrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
    const Eigen::Index rows = static_cast<Eigen::Index>(samples.size());
    Matrix design(rows, columns);
    Vector rhs(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const long double log_s2 = 2.0L * std::log(static_cast<long double>(samples[i].s));
        design(i, 0) = log_s2;
        design(i, 1) = -std::log(std::abs(log_s2));
        design(i, 2) = 1.0L;
        for (int k = 1; k <= options.correction_terms; ++k) design(i, 2 + k) = std::pow(log_s2, -k);
        rhs(i) = samples[i].value;
    }

    // Column scaling keeps the condition estimate about the geometry of the
    // basis rather than the units of each column.
    Vector scale = design.colwise().norm().transpose();
    for (Eigen::Index j = 0; j < columns; ++j)
        if (scale(j) == 0.0L) throw DegenerateDesign("basis function vanishes on all samples");
    Matrix scaled = design * scale.cwiseInverse().asDiagonal();

    Eigen::JacobiSVD<Matrix> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double smax = static_cast<double>(sv(0)), smin = static_cast<double>(sv(sv.size() - 1));
    if (!(smin > options.rank_tolerance * smax)) throw DegenerateDesign("design matrix is rank deficient");

    Vector y = svd.solve(rhs);
    y += svd.solve(rhs - scaled * y);  // one step of iterative refinement
    Vector coeffs = y.cwiseQuotient(scale);
    FitResult out;
    out.alpha_hat = static_cast<double>(coeffs(0));
    out.beta_hat = static_cast<double>(coeffs(1));
    out.const_hat = static_cast<double>(coeffs(2));
    for (int k = 0; k < options.correction_terms; ++k) out.corrections.push_back(static_cast<double>(coeffs(3 + k)));
    out.residual_norm = static_cast<double>((design * coeffs - rhs).norm());
    out.condition_estimate = smax / smin;
    out.correction_terms = options.correction_terms;
    return out;
}

/// Samples v = -log l2_norm of the Legendre family at log-spaced s.
inline std::vector<FitSample> legendre_samples(double s_min, double s_max, int count) {
    if (!(s_max < 0.5)) throw InputError("Legendre samples need s_max < 1/2");
    std::vector<FitSample> out;
    for (double s : log_spaced(s_min, s_max, count)) out.push_back({s, -std::log(legendre_l2(s).l2_norm)});
    return out;
}

}  // namespace cydegen
