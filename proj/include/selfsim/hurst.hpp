#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "series.hpp"

namespace selfsim {

enum class HurstMethod { AggregateVariance, RescaledRange };

// Bounds on log10(abscissa) selecting which points enter the line fit.
struct FitWindow {
    double lo;
    double hi;
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t n_points = 0;
};

struct HurstEstimate {
    double h = 0.0;
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    FitWindow window{0.0, 0.0};
    HurstMethod method = HurstMethod::AggregateVariance;
    // False flags a pathological fit (h outside (0,1)); h is never clamped.
    bool h_in_unit_interval = true;
    // (log10 x, log10 y) for every level computed, in-window or not.
    std::vector<std::pair<double, double>> points;
};

// How the fitted log-log slope maps to H for each method.
inline double h_from_av_slope(double slope) { return 1.0 + slope / 2.0; }
inline double h_from_rs_slope(double slope) { return slope; }

// Ordinary least squares on (log10 x, log10 y) restricted to points whose
// log10 x lies inside [window.lo, window.hi].  Needs at least 3 such points.
inline LineFit fit_loglog(std::span<const std::pair<double, double>> xy, FitWindow w) {
    if (!(w.lo < w.hi)) throw std::invalid_argument("fit window: min must be < max");
    std::vector<std::pair<double, double>> pts;
    for (const auto& [x, y] : xy) {
        if (!(x > 0.0) || !(y > 0.0))
            throw std::invalid_argument("fit_loglog: coordinates must be positive");
        const double lx = std::log10(x);
        if (lx >= w.lo && lx <= w.hi) pts.emplace_back(lx, std::log10(y));
    }
    if (pts.size() < 3)
        throw std::invalid_argument("fit_loglog: fewer than 3 points in fit window");

    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
    }
    const double n = static_cast<double>(pts.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_loglog: all abscissae coincide");

    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.n_points = pts.size();
    const double ss_res = syy - fit.slope * sxy;
    fit.r_squared = (syy == 0.0) ? 1.0 : 1.0 - ss_res / syy;
    return fit;
}

// Shared backend of both graphical methods: fit the in-window points of the
// raw (x, y) level statistics and map the slope to H.
inline HurstEstimate estimate_from_points(std::span<const std::pair<double, double>> xy,
                                          FitWindow w, HurstMethod method) {
    const LineFit fit = fit_loglog(xy, w);
    HurstEstimate est;
    est.slope = fit.slope;
    est.intercept = fit.intercept;
    est.r_squared = fit.r_squared;
    est.window = w;
    est.method = method;
    est.h = (method == HurstMethod::AggregateVariance) ? h_from_av_slope(fit.slope)
                                                       : h_from_rs_slope(fit.slope);
    est.h_in_unit_interval = est.h > 0.0 && est.h < 1.0;
    est.points.reserve(xy.size());
    for (const auto& [x, y] : xy) est.points.emplace_back(std::log10(x), std::log10(y));
    return est;
}

// Level-m aggregate: non-overlapping block means of m consecutive counts,
// trailing partial block dropped, bin width scaled by m.
inline TimeSeries aggregate_series(const TimeSeries& s, std::size_t m) {
    if (m == 0) throw std::invalid_argument("aggregate_series: m must be >= 1");
    if (m > s.size()) throw std::invalid_argument("aggregate_series: m exceeds series length");
    const std::size_t blocks = s.size() / m;
    TimeSeries out;
    out.bin_width = s.bin_width * static_cast<double>(m);
    out.counts.reserve(blocks);
    auto it = s.counts.begin();
    for (std::size_t b = 0; b < blocks; ++b, it += static_cast<std::ptrdiff_t>(m))
        out.counts.push_back(std::accumulate(it, it + static_cast<std::ptrdiff_t>(m), 0.0) /
                             static_cast<double>(m));
    return out;
}

namespace detail {

// 10-per-decade log grid of integers covering [lo, hi], endpoint included.
inline std::vector<std::size_t> log_spaced_sizes(std::size_t lo, std::size_t hi) {
    std::vector<std::size_t> out;
    if (lo == 0 || hi < lo) return out;
    const int j0 = static_cast<int>(std::ceil(10.0 * std::log10(static_cast<double>(lo))));
    for (int j = j0;; ++j) {
        auto v = static_cast<std::size_t>(std::llround(std::pow(10.0, j / 10.0)));
        if (v < lo) v = lo;
        if (v > hi) break;
        if (out.empty() || out.back() != v) out.push_back(v);
    }
    if (out.empty() || out.back() != hi) out.push_back(hi);
    return out;
}

}  // namespace detail

// Default aggregation levels: 1 .. length/4, ten per decade.  length/4
// guarantees at least 4 blocks at the largest level.
inline std::vector<std::size_t> default_aggregation_levels(std::size_t length) {
    return detail::log_spaced_sizes(1, length / 4);
}

// Default R/S block sizes: 8 .. length/4, ten per decade.
inline std::vector<std::size_t> default_rs_block_sizes(std::size_t length) {
    return detail::log_spaced_sizes(8, length / 4);
}

// The classical cut-off points for the variance-of-aggregates fit.
inline FitWindow default_av_window() { return FitWindow{1.0, 4.0}; }

inline FitWindow default_rs_window(std::size_t length) {
    return FitWindow{1.0, std::log10(static_cast<double>(length) / 4.0)};
}

// Variance-of-aggregates estimator: least squares through
// (log10 m, log10 Var(level-m aggregate)); H = 1 - (-slope)/2.
inline HurstEstimate variance_aggregate_estimate(const TimeSeries& s,
                                                 std::span<const std::size_t> m_values,
                                                 FitWindow w) {
    if (m_values.empty())
        throw std::invalid_argument("variance_aggregate_estimate: no aggregation levels");
    const std::size_t m_max = *std::max_element(m_values.begin(), m_values.end());
    if (s.size() < 4 * m_max)
        throw std::invalid_argument(
            "variance_aggregate_estimate: series shorter than 4 x largest level");

    std::vector<std::pair<double, double>> pts;
    bool any_positive = false;
    for (std::size_t m : m_values) {
        const double var = series_variance(aggregate_series(s, m));
        const double lm = std::log10(static_cast<double>(m));
        if (var > 0.0) {
            any_positive = true;
            pts.emplace_back(static_cast<double>(m), var);
        } else if (lm >= w.lo && lm <= w.hi) {
            throw std::runtime_error(
                "variance_aggregate_estimate: degenerate input (zero variance at level " +
                std::to_string(m) + ")");
        }
    }
    if (!any_positive)
        throw std::runtime_error("variance_aggregate_estimate: degenerate input (constant series)");
    return estimate_from_points(pts, w, HurstMethod::AggregateVariance);
}

inline HurstEstimate variance_aggregate_estimate(const TimeSeries& s) {
    const auto ms = default_aggregation_levels(s.size());
    return variance_aggregate_estimate(s, ms, default_av_window());
}

// R/S of one block: range of the mean-adjusted cumulative sums over the
// population standard deviation.  The empty prefix W_0 = 0 participates in
// the range extremes.
inline double rs_statistic(std::span<const double> block) {
    const std::size_t n = block.size();
    if (n < 2) throw std::invalid_argument("rs_statistic: need at least 2 values");
    const double mean =
        std::accumulate(block.begin(), block.end(), 0.0) / static_cast<double>(n);
    double w = 0.0, w_max = 0.0, w_min = 0.0, ss = 0.0;
    for (double x : block) {
        const double d = x - mean;
        w += d;
        w_max = std::max(w_max, w);
        w_min = std::min(w_min, w);
        ss += d * d;
    }
    const double s = std::sqrt(ss / static_cast<double>(n));
    if (s == 0.0) throw std::invalid_argument("rs_statistic: block has zero dispersion");
    return (w_max - w_min) / s;
}

// R/S estimator: mean R/S over all complete non-overlapping blocks of each
// size (blocks start at index 0; constant blocks are skipped), least squares
// through (log10 n, log10 mean R/S); H is the slope itself.
inline HurstEstimate rs_estimate(const TimeSeries& s, std::span<const std::size_t> n_values,
                                 FitWindow w) {
    if (n_values.empty()) throw std::invalid_argument("rs_estimate: no block sizes");
    const std::size_t n_max = *std::max_element(n_values.begin(), n_values.end());
    if (s.size() < n_max)
        throw std::invalid_argument("rs_estimate: series shorter than largest block size");

    std::vector<std::pair<double, double>> pts;
    pts.reserve(n_values.size());
    for (std::size_t n : n_values) {
        if (n < 2) throw std::invalid_argument("rs_estimate: block sizes must be >= 2");
        double sum = 0.0;
        std::size_t valid = 0;
        for (std::size_t start = 0; start + n <= s.size(); start += n) {
            const std::span<const double> block(s.counts.data() + start, n);
            // skip dispersion-free blocks; they carry no R/S information
            const double mean =
                std::accumulate(block.begin(), block.end(), 0.0) / static_cast<double>(n);
            bool constant = true;
            for (double x : block) {
                if (x != mean) {
                    constant = false;
                    break;
                }
            }
            if (constant) continue;
            sum += rs_statistic(block);
            ++valid;
        }
        if (valid == 0)
            throw std::runtime_error("rs_estimate: all blocks constant at block size " +
                                     std::to_string(n));
        pts.emplace_back(static_cast<double>(n), sum / static_cast<double>(valid));
    }
    return estimate_from_points(pts, w, HurstMethod::RescaledRange);
}

inline HurstEstimate rs_estimate(const TimeSeries& s) {
    const auto ns = default_rs_block_sizes(s.size());
    return rs_estimate(s, ns, default_rs_window(s.size()));
}

}  // namespace selfsim
