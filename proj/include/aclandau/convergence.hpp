#pragma once

#include <cmath>
#include <vector>

#include "errors.hpp"

namespace aclandau {

/// Least-squares fit log(err) = order * log(h) + intercept.
struct OrderFit {
    double order = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    bool monotone = true;  ///< errors strictly decrease as h decreases
};

inline OrderFit fit_order(const std::vector<double>& h, const std::vector<double>& err) {
    if (h.size() != err.size()) throw ValidationError("spacing and error lists differ in length");
    if (h.size() < 3) throw ValidationError("order fit needs at least three refinement levels");
    const auto n = static_cast<double>(h.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(h[i] > 0.0) || !(err[i] > 0.0)) throw ValidationError("order fit needs positive spacings and errors");
        const double x = std::log(h[i]), y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = n * sxx - sx * sx;
    if (denom <= 0.0) throw ValidationError("order fit needs distinct spacings");
    OrderFit fit;
    fit.order = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.order * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double mean = sy / n;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double y = std::log(err[i]);
        const double pred = fit.order * std::log(h[i]) + fit.intercept;
        ss_res += (y - pred) * (y - pred);
        ss_tot += (y - mean) * (y - mean);
    }
    fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    for (std::size_t i = 0; i < h.size(); ++i)
        for (std::size_t j = 0; j < h.size(); ++j)
            if (h[i] < h[j] && !(err[i] < err[j])) fit.monotone = false;
    return fit;
}

}  // namespace aclandau
