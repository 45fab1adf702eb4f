#ifndef SYNMIX_STATS_HPP
#define SYNMIX_STATS_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "synmix/error.hpp"

namespace synmix::stats {

/// Sum in ascending order so the result does not depend on input order.
inline double canonical_sum(std::span<const double> values) {
    std::vector<double> v(values.begin(), values.end());
    std::sort(v.begin(), v.end());
    double s = 0.0;
    for (const double x : v) s += x;
    return s;
}

inline double mean(std::span<const double> values) {
    if (values.empty()) throw ContractError("mean of an empty sample");
    return canonical_sum(values) / static_cast<double>(values.size());
}

/// Sample variance (n - 1 denominator); 0 for a single value.
inline double variance(std::span<const double> values) {
    if (values.size() < 2) return 0.0;
    const double m = mean(values);
    std::vector<double> sq;
    sq.reserve(values.size());
    for (const double x : values) sq.push_back((x - m) * (x - m));
    return canonical_sum(sq) / static_cast<double>(values.size() - 1);
}

inline double stddev(std::span<const double> values) { return std::sqrt(variance(values)); }

namespace detail {

// Continued fraction for the incomplete beta function, modified Lentz.
inline double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIter = 500;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw NumericError("incomplete beta continued fraction did not converge");
}

}  // namespace detail

/// Regularized incomplete beta I_x(a, b).
inline double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw ContractError("incomplete_beta: a, b must be > 0");
    if (!(x >= 0.0 && x <= 1.0)) throw ContractError("incomplete_beta: x must lie in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * detail::beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// P(|T| >= |t|) for Student's t with `df` degrees of freedom (df may be
/// fractional).
inline double student_t_two_sided_p(double t, double df) {
    if (!(df > 0.0)) throw ContractError("degrees of freedom must be > 0");
    if (std::isinf(t)) return 0.0;
    const double x = df / (df + t * t);
    return incomplete_beta(0.5 * df, 0.5, x);
}

inline double student_t_cdf(double t, double df) {
    const double tail = 0.5 * student_t_two_sided_p(t, df);
    return t >= 0.0 ? 1.0 - tail : tail;
}

/// Upper quantile: the t with P(T > t) = upper_tail, found by bisection on
/// the two-sided tail probability.
inline double student_t_quantile_upper(double upper_tail, double df) {
    if (!(upper_tail > 0.0 && upper_tail < 0.5)) {
        throw ContractError("upper tail probability must lie in (0, 0.5)");
    }
    const double target = 2.0 * upper_tail;
    double lo = 0.0;
    double hi = 1.0;
    while (student_t_two_sided_p(hi, df) > target) {
        hi *= 2.0;
        if (hi > 1e12) throw NumericError("t quantile out of range");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_two_sided_p(mid, df) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct WelchResult {
    double mean_a = 0.0;
    double std_a = 0.0;
    std::size_t n_a = 0;
    double mean_b = 0.0;
    double std_b = 0.0;
    std::size_t n_b = 0;
    double t = 0.0;
    double df = 0.0;
    double p_value = 1.0;
    double critical = 0.0;  // two-sided critical |t| at alpha
    double alpha = 0.05;
    bool significant = false;
};

/// Welch's unequal-variance two-sample t-test. When both samples have zero
/// variance, df falls back to n_a + n_b - 2 and t is 0 (equal means) or
/// +-infinity.
inline WelchResult welch_t_test(std::span<const double> a, std::span<const double> b,
                                double alpha = 0.05) {
    if (a.size() < 2 || b.size() < 2) {
        throw ValidationError("Welch test needs at least 2 values per group");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) throw ContractError("alpha must lie in (0, 1)");
    WelchResult r;
    r.alpha = alpha;
    r.n_a = a.size();
    r.n_b = b.size();
    r.mean_a = mean(a);
    r.mean_b = mean(b);
    const double va = variance(a);
    const double vb = variance(b);
    r.std_a = std::sqrt(va);
    r.std_b = std::sqrt(vb);
    const double na = static_cast<double>(r.n_a);
    const double nb = static_cast<double>(r.n_b);
    const double sa = va / na;
    const double sb = vb / nb;
    const double se2 = sa + sb;
    const double diff = r.mean_a - r.mean_b;
    if (se2 == 0.0) {
        r.df = na + nb - 2.0;
        if (diff == 0.0) {
            r.t = 0.0;
            r.p_value = 1.0;
        } else {
            r.t = diff > 0.0 ? std::numeric_limits<double>::infinity()
                             : -std::numeric_limits<double>::infinity();
            r.p_value = 0.0;
        }
    } else {
        r.t = diff / std::sqrt(se2);
        r.df = se2 * se2 / (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
        r.p_value = student_t_two_sided_p(r.t, r.df);
    }
    r.critical = student_t_quantile_upper(0.5 * alpha, r.df);
    r.significant = std::abs(r.t) > r.critical;
    return r;
}

}  // namespace synmix::stats

#endif  // SYNMIX_STATS_HPP
