#include "afg/stats.hpp"

#include <algorithm>
#include <cmath>

namespace afg {
namespace {

double sample_variance(const std::vector<double>& xs, double mean) {
    double acc = 0.0;
    for (const double x : xs)
        acc += (x - mean) * (x - mean);
    return acc / static_cast<double>(xs.size() - 1);
}

double beta_cf(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-12;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny)
        d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const double m2 = 2.0 * m;
        double coeff = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + coeff * d;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = 1.0 + coeff / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        h *= d * c;
        coeff = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + coeff * d;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = 1.0 + coeff / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < eps)
            return h;
    }
    raise(ErrorCode::Statistics, "incomplete beta continued fraction did not converge");
}

} // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        raise(ErrorCode::Statistics, "beta parameters must be positive");
    if (x < 0.0 || x > 1.0)
        raise(ErrorCode::Statistics, "beta argument outside [0,1]");
    if (x == 0.0)
        return 0.0;
    if (x == 1.0)
        return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

SampleSummary summarize(const std::vector<double>& samples) {
    if (samples.size() < 2)
        raise(ErrorCode::Statistics, "need at least two samples");
    SampleSummary out;
    out.n = static_cast<long>(samples.size());
    double sum = 0.0;
    for (const double x : samples)
        sum += x;
    out.mean = sum / static_cast<double>(out.n);
    out.sd = std::sqrt(sample_variance(samples, out.mean));
    out.max = *std::max_element(samples.begin(), samples.end());
    return out;
}

WelchResult welch_t(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2)
        raise(ErrorCode::Statistics, "welch test needs n >= 2 per sample");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double mean_a = 0.0, mean_b = 0.0;
    for (const double x : a)
        mean_a += x;
    for (const double x : b)
        mean_b += x;
    mean_a /= na;
    mean_b /= nb;
    const double va = sample_variance(a, mean_a);
    const double vb = sample_variance(b, mean_b);
    if (va == 0.0 && vb == 0.0)
        raise(ErrorCode::DegenerateTest, "both samples have zero variance");

    const double sa = va / na;
    const double sb = vb / nb;
    WelchResult out;
    out.t = (mean_a - mean_b) / std::sqrt(sa + sb);
    out.df = (sa + sb) * (sa + sb) /
             (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
    if (out.t == 0.0) {
        out.p_two_tailed = 1.0;
        return out;
    }
    const double x = out.df / (out.df + out.t * out.t);
    out.p_two_tailed = regularized_incomplete_beta(out.df / 2.0, 0.5, x);
    return out;
}

} // namespace afg
