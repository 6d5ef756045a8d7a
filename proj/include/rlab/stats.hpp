#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rlab/rng.hpp"

namespace rlab {

inline double mean(const std::vector<double>& x) {
    return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

inline double sample_sd(const std::vector<double>& x) {
    if (x.size() < 2) return 0.0;
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return std::sqrt(s / static_cast<double>(x.size() - 1));
}

// Bootstrap standard error of the mean.
inline double bootstrap_stderr(const std::vector<double>& x, Rng& rng, int reps = 200) {
    const int n = static_cast<int>(x.size());
    if (n < 2) return 0.0;
    std::vector<double> ms(reps);
    for (int r = 0; r < reps; ++r) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += x[static_cast<size_t>(rng.uniform_int(n))];
        ms[static_cast<size_t>(r)] = s / n;
    }
    return sample_sd(ms);
}

inline double percentile(std::vector<double> x, double q) {
    if (x.empty()) throw std::invalid_argument("percentile: empty");
    std::sort(x.begin(), x.end());
    const double pos = q * (static_cast<double>(x.size()) - 1.0);
    const size_t lo = static_cast<size_t>(pos);
    const size_t hi = std::min(lo + 1, x.size() - 1);
    const double f = pos - static_cast<double>(lo);
    return x[lo] * (1.0 - f) + x[hi] * f;
}

// Kolmogorov-Smirnov statistic of samples against a cdf.
inline double ks_statistic(std::vector<double> x, const std::function<double(double)>& cdf) {
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
    }
    return d;
}

inline double cauchy_cdf(double x) { return 0.5 + std::atan(x) / kPi; }

// Regularized upper incomplete gamma Q(a,x), series + continued fraction.
inline double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q domain");
    if (x == 0.0) return 1.0;
    const double gln = std::lgamma(a);
    if (x < a + 1.0) {  // P by series, return 1-P
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-15) break;
        }
        return 1.0 - sum * std::exp(-x + a * std::log(x) - gln);
    }
    // Q by Lentz continued fraction
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    return std::exp(-x + a * std::log(x) - gln) * h;
}

// p-value for a chi-square statistic with k degrees of freedom.
inline double chi2_pvalue(double stat, int dof) {
    return gamma_q(0.5 * dof, 0.5 * stat);
}

// Chi-square uniformity p-value for binned counts.
inline double chi2_uniform_pvalue(const std::vector<int>& counts) {
    const int k = static_cast<int>(counts.size());
    const double n = std::accumulate(counts.begin(), counts.end(), 0.0);
    const double e = n / k;
    double stat = 0.0;
    for (int c : counts) stat += (c - e) * (c - e) / e;
    return chi2_pvalue(stat, k - 1);
}

// Least-squares slope of y against x.
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("ls_slope");
    const double mx = mean(x), my = mean(y);
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    return sxy / sxx;
}

}  // namespace rlab
