#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "afg/difference.hpp"
#include "afg/env.hpp"

namespace support {

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double fa, double fb, double fm, double whole,
                               double eps, int depth) {
    const double m = (a + b) / 2.0;
    const double lm = (a + m) / 2.0, rm = (m + b) / 2.0;
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * eps)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, fm, flm, left, eps / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, fb, frm, right, eps / 2.0, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double eps) {
    const double fa = f(a), fb = f(b), fm = f((a + b) / 2.0);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fb, fm, whole, eps, 60);
}

inline double t_density(double x, double df) {
    const double ln = std::lgamma((df + 1.0) / 2.0) - std::lgamma(df / 2.0) -
                      0.5 * std::log(df * std::acos(-1.0)) -
                      (df + 1.0) / 2.0 * std::log1p(x * x / df);
    return std::exp(ln);
}

/// Two-tailed p for a t statistic by numerically integrating the density
/// over the central interval; independent of the incomplete-beta route.
inline double p_two_tailed_by_integration(double t, double df) {
    const double limit = std::fabs(t);
    if (limit == 0.0)
        return 1.0;
    const auto pdf = [df](double x) { return t_density(x, df); };
    const double central = integrate(pdf, -limit, limit, 1e-12);
    return std::max(0.0, 1.0 - central);
}

/// Rescales base so the result has exactly the requested sample mean and
/// sample sd (n-1 denominator), up to rounding.
inline std::vector<double> affine_rescale(const std::vector<double>& base, double mean,
                                          double sd) {
    double base_mean = 0.0;
    for (const double x : base)
        base_mean += x;
    base_mean /= static_cast<double>(base.size());
    double var = 0.0;
    for (const double x : base)
        var += (x - base_mean) * (x - base_mean);
    const double base_sd = std::sqrt(var / static_cast<double>(base.size() - 1));
    std::vector<double> out;
    out.reserve(base.size());
    for (const double x : base)
        out.push_back(mean + (x - base_mean) * (sd / base_sd));
    return out;
}

inline afg::Tri tri_of(char c) {
    switch (c) {
    case '0': return afg::Tri::Off;
    case '1': return afg::Tri::On;
    default: return afg::Tri::Unobserved;
    }
}

/// "10?" -> [On, Off, Unobserved]
inline afg::EnvState make_state(const std::string& factors, const std::string& results,
                                int time = 0) {
    afg::EnvState state;
    state.time = time;
    for (const char c : factors)
        state.factors.push_back(tri_of(c));
    for (const char c : results)
        state.results.push_back(tri_of(c));
    return state;
}

inline afg::Scope scope_over(int num_factors, int num_results, int window = 1) {
    afg::Scope scope;
    scope.temporal_window = window;
    for (int f = 0; f < num_factors; ++f)
        scope.spatial_set.insert(afg::factor_id(f));
    for (int r = 0; r < num_results; ++r)
        scope.spatial_set.insert(afg::result_id(r));
    return scope;
}

inline afg::EnvState random_state(std::mt19937_64& rng, int num_factors,
                                  int num_results, int time,
                                  bool allow_unobserved = true) {
    afg::EnvState state;
    state.time = time;
    const int sides = allow_unobserved ? 3 : 2;
    for (int f = 0; f < num_factors; ++f)
        state.factors.push_back(static_cast<afg::Tri>(rng() % sides));
    for (int r = 0; r < num_results; ++r)
        state.results.push_back(static_cast<afg::Tri>(rng() % sides));
    return state;
}

inline afg::Difference random_difference(std::mt19937_64& rng) {
    afg::Difference d;
    d.dimension = static_cast<afg::Dimension>(rng() % 4);
    d.location = rng() % 2 == 0 ? afg::factor_id(static_cast<int>(rng() % 10))
                                : afg::result_id(static_cast<int>(rng() % 10));
    d.direction = static_cast<afg::Direction>(rng() % 3);
    const double magnitudes[] = {0.2, 0.5, 1.0, 1.7};
    d.delta_magnitude = magnitudes[rng() % 4];
    d.first_seen = static_cast<int>(rng() % 50);
    d.occurrence_count = 1 + static_cast<int>(rng() % 5);
    d.held_steps = 1 + static_cast<int>(rng() % 5);
    return d;
}

} // namespace support
