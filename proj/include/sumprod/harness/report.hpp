#pragma once

// Report-only helpers: log-log exponent fits and the shifted product-set report.

#include <gmp.h>

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "sumprod/collinear.hpp"
#include "sumprod/core.hpp"
#include "sumprod/errors.hpp"
#include "sumprod/harness/serialize.hpp"
#include "sumprod/setgen.hpp"

namespace sumprod::harness {

struct ExponentFit {
    std::string family;
    std::vector<std::size_t> sizes;
    std::vector<Integer> values;
    double slope = 0;
    double intercept = 0;
    double target = 0;
    std::vector<double> residuals; ///< ln value - (slope ln size + intercept)
};

/// Natural log of a positive integer of any size.
inline double log_integer(const Integer& v) {
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

/// Least-squares line through (ln size, ln value).
inline ExponentFit fit_exponent(std::string family, const std::vector<std::pair<std::size_t, Integer>>& points,
                                double target = 0) {
    if (points.size() < 3) throw InsufficientPoints("fit_exponent needs at least 3 points");
    ExponentFit f;
    f.family = std::move(family);
    f.target = target;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].first == 0 || points[i].second <= 0) throw InvalidArgument("fit_exponent needs positive sizes and values");
        if (i > 0 && points[i].first <= points[i - 1].first) throw InvalidArgument("fit_exponent needs strictly increasing sizes");
        f.sizes.push_back(points[i].first);
        f.values.push_back(points[i].second);
    }
    const double n = static_cast<double>(points.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::vector<double> xs, ys;
    for (const auto& [s, v] : points) {
        const double x = std::log(static_cast<double>(s));
        const double y = log_integer(v);
        xs.push_back(x);
        ys.push_back(y);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    f.intercept = (sy - f.slope * sx) / n;
    for (std::size_t i = 0; i < xs.size(); ++i) f.residuals.push_back(ys[i] - (f.slope * xs[i] + f.intercept));
    return f;
}

inline json to_json(const ExponentFit& f) {
    json sizes = json::array(), values = json::array();
    for (auto s : f.sizes) sizes.push_back(s);
    for (const auto& v : f.values) values.push_back(v.get_str());
    return {{"family", f.family}, {"sizes", sizes},         {"values", values},
            {"slope", f.slope},   {"intercept", f.intercept}, {"target", f.target},
            {"residuals", f.residuals}};
}

// ---------------------------------------------------------------------------
// |(A + alpha)(A + beta)| and |A + alpha A + beta A| for sets with small K.

struct ShiftProductReport {
    Scalar alpha, beta;
    std::size_t size = 0;
    Scalar K_mul;              ///< |AA| / |A|
    Scalar K_div;              ///< |A/A| / |A|
    Scalar K;                  ///< min(K_mul, K_div), the best admissible K
    std::size_t shifted_product = 0; ///< |(A + alpha)(A + beta)|
    std::size_t three_sum = 0;       ///< |A + alpha A + beta A|
    Scalar product_ratio;      ///< |(A + alpha)(A + beta)| / (K^{-3} |A|^2)
    Scalar sum_ratio;          ///< |A + alpha A + beta A| / (K^{-5} |A|^2)
    bool identity_run = false; ///< false when over budget
    IdentityReport identity;   ///< with C = AA/alpha, D = AA/beta
};

inline ShiftProductReport shift_product_report(const RatSet& a, const Scalar& alpha, const Scalar& beta,
                                               Count budget = 200'000'000ULL) {
    if (alpha == 0 || beta == 0) throw ZeroShift("shift_product_report needs nonzero alpha and beta");
    if (a.has_zero()) throw DivisionByZero("shift_product_report needs 0 not in A");
    if (a.empty()) throw InvalidArgument("shift_product_report: empty A");
    ShiftProductReport r;
    r.alpha = alpha;
    r.beta = beta;
    r.size = a.size();
    const Scalar n(static_cast<unsigned long>(a.size()));
    const RatSet aa = set_op(a, a, SetOp::prod);
    r.K_mul = Scalar(static_cast<unsigned long>(aa.size())) / n;
    r.K_div = Scalar(static_cast<unsigned long>(set_op(a, a, SetOp::ratio).size())) / n;
    r.K = std::min(r.K_mul, r.K_div);
    r.shifted_product = set_op(affine(a, Scalar(1), alpha), affine(a, Scalar(1), beta), SetOp::prod).size();
    r.three_sum = set_op(set_op(a, affine(a, alpha, Scalar(0)), SetOp::sum), affine(a, beta, Scalar(0)), SetOp::sum).size();
    const Scalar k3 = r.K * r.K * r.K;
    r.product_ratio = Scalar(static_cast<unsigned long>(r.shifted_product)) * k3 / (n * n);
    r.sum_ratio = Scalar(static_cast<unsigned long>(r.three_sum)) * k3 * r.K * r.K / (n * n);

    const RatSet c = affine(aa, Scalar(1) / alpha, Scalar(0));
    const RatSet d = affine(aa, Scalar(1) / beta, Scalar(0));
    const long double work = static_cast<long double>(a.size()) * a.size() * c.size() * c.size() * d.size() * d.size();
    if (work <= static_cast<long double>(budget)) {
        r.identity = t_identity_check(a, c, d, budget);
        r.identity_run = true;
    }
    return r;
}

inline json to_json(const ShiftProductReport& r) {
    json out = {{"alpha", to_json(r.alpha)},
                {"beta", to_json(r.beta)},
                {"size", r.size},
                {"K_mul", to_json(r.K_mul)},
                {"K_div", to_json(r.K_div)},
                {"K", to_json(r.K)},
                {"shifted_product", r.shifted_product},
                {"three_sum", r.three_sum},
                {"product_ratio", to_json(r.product_ratio)},
                {"sum_ratio", to_json(r.sum_ratio)},
                {"identity_run", r.identity_run}};
    if (r.identity_run) out["identity"] = to_json(r.identity);
    return out;
}

} // namespace sumprod::harness
