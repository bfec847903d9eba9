#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace selfsim {

// Packet counts per fixed-width time bin: the incremental process of a
// traffic trace.  Counts are nonnegative reals; a source that is On for
// part of a bin contributes rate * overlap rather than a whole packet.
struct TimeSeries {
    double bin_width = 1.0;
    std::vector<double> counts;

    std::size_t size() const noexcept { return counts.size(); }
    bool empty() const noexcept { return counts.empty(); }
};

// Running totals of the counts; the last entry is the whole trace's traffic.
inline std::vector<double> cumulative(const TimeSeries& s) {
    if (s.empty()) throw std::invalid_argument("cumulative: empty series");
    std::vector<double> out(s.size());
    std::partial_sum(s.counts.begin(), s.counts.end(), out.begin());
    return out;
}

inline double series_mean(const TimeSeries& s) {
    if (s.empty()) throw std::invalid_argument("series_mean: empty series");
    return std::accumulate(s.counts.begin(), s.counts.end(), 0.0) /
           static_cast<double>(s.size());
}

// Population variance (divide by n, not n-1).
inline double series_variance(const TimeSeries& s) {
    const double mean = series_mean(s);
    double ss = 0.0;
    for (double c : s.counts) {
        const double d = c - mean;
        ss += d * d;
    }
    return ss / static_cast<double>(s.size());
}

// Warm-up discard: drop the first n bins.  At least one bin must remain.
inline TimeSeries drop_prefix(const TimeSeries& s, std::size_t n) {
    if (n >= s.size()) throw std::invalid_argument("drop_prefix: would empty the series");
    return TimeSeries{s.bin_width,
                      std::vector<double>(s.counts.begin() + static_cast<std::ptrdiff_t>(n),
                                          s.counts.end())};
}

// Round counts down to whole packets, carrying the remainder into the next
// bin so that the running total is preserved.
inline void integerize_floor_carry(std::vector<double>& counts) {
    double carry = 0.0;
    for (double& c : counts) {
        const double v = c + carry;
        const double f = std::floor(v);
        carry = v - f;
        c = f;
    }
}

inline void scale_counts(TimeSeries& s, double factor) {
    for (double& c : s.counts) c *= factor;
}

}  // namespace selfsim
