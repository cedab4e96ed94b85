#pragma once

// Default knobs shared by the library, the CLI and the test suites. Every CLI
// flag falls back to the value here.

#include <string_view>

namespace cydegen::config {

struct Defaults {
    int degree_cap;            ///< Milnor: largest m^D tried before CapExceeded
    int verify_n_max;          ///< identity checks run for n = 1..verify_n_max
    int verify_hard_cap;       ///< largest accepted --n-max
    double fit_s_min;
    double fit_s_max;
    int fit_count;
    int fit_correction_terms;  ///< 1/log|s|^2 powers added to the fit basis
    double fit_alpha_tolerance;
    double fit_beta_tolerance;
    double fit_rank_tolerance;
};

inline constexpr Defaults defaults{
    .degree_cap = 30,
    .verify_n_max = 5,
    .verify_hard_cap = 6,
    .fit_s_min = 1e-12,
    .fit_s_max = 1e-3,
    .fit_count = 40,
    .fit_correction_terms = 1,
    .fit_alpha_tolerance = 0.02,
    .fit_beta_tolerance = 0.1,
    .fit_rank_tolerance = 1e-10,
};

namespace exit_code {
inline constexpr int success = 0;
inline constexpr int check_failed = 1;
inline constexpr int input_error = 2;
inline constexpr int cap_exceeded = 3;
}  // namespace exit_code

}  // namespace cydegen::config
