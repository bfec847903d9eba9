#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

#include "rng.hpp"

namespace selfsim {

// Pareto law on [alpha, inf): F(x) = 1 - (alpha/x)^beta.
//
// Shape 1 < beta < 2 gives finite mean and infinite variance; On/Off
// durations drawn from that regime make the aggregated traffic long-range
// dependent.  beta >= 2 is allowed for short-tail comparisons.
struct ParetoParams {
    double alpha = 1.0;  // scale: smallest possible value (time units)
    double beta = 1.5;   // shape: tail index, dimensionless

    bool lrd_regime() const noexcept { return beta > 1.0 && beta < 2.0; }
};

inline void validate(const ParetoParams& p) {
    if (!(p.alpha > 0.0)) throw std::invalid_argument("Pareto alpha must be > 0");
    if (!(p.beta > 0.0)) throw std::invalid_argument("Pareto beta must be > 0");
}

/// Density (beta/alpha) * (alpha/x)^(beta+1) for x >= alpha, 0 below support.
inline double pareto_pdf(double x, const ParetoParams& p) {
    if (x < p.alpha) return 0.0;
    return (p.beta / p.alpha) * std::pow(p.alpha / x, p.beta + 1.0);
}

/// Distribution function 1 - (alpha/x)^beta for x >= alpha, 0 below support.
inline double pareto_cdf(double x, const ParetoParams& p) {
    if (x < p.alpha) return 0.0;
    return 1.0 - std::pow(p.alpha / x, p.beta);
}

/// Mean alpha*beta/(beta-1), or +inf when beta <= 1 (the integral diverges;
/// infinity is a legitimate value here, not a failure).
inline double pareto_mean(const ParetoParams& p) {
    if (p.beta <= 1.0) return std::numeric_limits<double>::infinity();
    return p.alpha * p.beta / (p.beta - 1.0);
}

// Maps u in (0, 1] to the support: alpha * u^(-1/beta).  u is the survival
// probability of the returned point; u = 1 hits the support boundary alpha.
inline double pareto_from_uniform(double u, const ParetoParams& p) {
    return p.alpha * std::pow(u, -1.0 / p.beta);
}

// Inverse-transform sample, always >= alpha.  `cap` truncates the tail;
// truncation destroys long-range dependence, so it stays off unless the
// caller asks for it explicitly (bounded-memory experiments).
inline double pareto_sample(Rng& g, const ParetoParams& p,
                            double cap = std::numeric_limits<double>::infinity()) {
    const double x = pareto_from_uniform(uniform_open0(g), p);
    return x < cap ? x : cap;
}

}  // namespace selfsim
