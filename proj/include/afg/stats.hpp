#pragma once

#include <vector>

#include "afg/errors.hpp"

namespace afg {

struct SampleSummary {
    double mean = 0.0;
    double sd = 0.0;  // sample standard deviation, n-1 denominator
    double max = 0.0;
    long n = 0;
};

struct WelchResult {
    double t = 0.0;
    double df = 0.0;
    double p_two_tailed = 1.0;
};

SampleSummary summarize(const std::vector<double>& samples);

/// Unequal-variance two-sample t-test; p from the Student-t CDF.
WelchResult welch_t(const std::vector<double>& a, const std::vector<double>& b);

/// I_x(a,b) via continued fraction (modified Lentz), relative tolerance 1e-12.
double regularized_incomplete_beta(double a, double b, double x);

} // namespace afg
