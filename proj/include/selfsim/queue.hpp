#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "hurst.hpp"
#include "rng.hpp"
#include "series.hpp"
#include "traffic.hpp"

namespace selfsim {

enum class ServiceKind { Deterministic, Exponential };

struct ServiceConfig {
    ServiceKind kind = ServiceKind::Deterministic;
    double rate_or_mean = 1.0;  // packets per slot: fixed rate, or exponential mean
};

inline void validate(const ServiceConfig& s) {
    if (!(s.rate_or_mean > 0.0)) throw std::invalid_argument("service rate/mean must be > 0");
}

struct QueueStats {
    std::vector<std::uint64_t> occupancy;  // queue length after service, per slot
    double mean_occupancy = 0.0;
    std::uint64_t max_occupancy = 0;
    // peak queue length right after arrivals join, before any drop or
    // service; on an infinite buffer this is the smallest capacity that
    // loses nothing under the drop-before-serve slot order
    std::uint64_t peak_backlog = 0;
    std::uint64_t lost = 0;
    std::uint64_t served = 0;
    std::uint64_t total_arrivals = 0;

    std::uint64_t final_occupancy() const {
        return occupancy.empty() ? 0 : occupancy.back();
    }
};

// Slot-synchronous contention element.  Within a slot, in order: arrivals
// join the queue, whatever exceeds the capacity is dropped and counted as
// lost, then the slot's service quota leaves.  Real-valued counts are
// integerized by floor-with-carried-remainder so total load is preserved;
// the same carry rule spreads a fractional deterministic rate across slots.
// The exponential quota is drawn every slot whether or not the queue needs
// it, so the service sample path is independent of the capacity.
inline QueueStats simulate_queue(const TimeSeries& arrivals, ServiceConfig service,
                                 std::optional<std::uint64_t> capacity, std::uint64_t seed) {
    if (arrivals.empty()) throw std::invalid_argument("simulate_queue: empty arrivals");
    validate(service);

    QueueStats st;
    st.occupancy.reserve(arrivals.size());
    Rng g = make_rng(substream_seed(seed, 0));
    std::uint64_t q = 0;
    double arrival_carry = 0.0;
    double service_carry = 0.0;
    double occupancy_sum = 0.0;

    for (double c : arrivals.counts) {
        if (!(c >= 0.0) || !std::isfinite(c))
            throw std::invalid_argument("simulate_queue: arrival counts must be finite and >= 0");

        const double v = c + arrival_carry;
        const double f = std::floor(v);
        arrival_carry = v - f;
        const auto a = static_cast<std::uint64_t>(f);
        st.total_arrivals += a;

        q += a;
        if (q > st.peak_backlog) st.peak_backlog = q;
        if (capacity && q > *capacity) {
            st.lost += q - *capacity;
            q = *capacity;
        }

        std::uint64_t quota;
        if (service.kind == ServiceKind::Deterministic) {
            const double sv = service.rate_or_mean + service_carry;
            const double sf = std::floor(sv);
            service_carry = sv - sf;
            quota = static_cast<std::uint64_t>(sf);
        } else {
            quota = static_cast<std::uint64_t>(
                std::llround(exponential_sample(g, service.rate_or_mean)));
        }

        const std::uint64_t now = (q < quota) ? q : quota;
        q -= now;
        st.served += now;
        st.occupancy.push_back(q);
        if (q > st.max_occupancy) st.max_occupancy = q;
        occupancy_sum += static_cast<double>(q);
    }
    st.mean_occupancy = occupancy_sum / static_cast<double>(st.occupancy.size());
    return st;
}

// Smallest capacity with zero loss: the peak backlog of an infinite-buffer
// run under the identical service sample path (same seed).  Because drops
// happen before the slot's service, the binding peak is the one right after
// arrivals join, not the post-service occupancy.  buffer_width > 1 reports
// buffer units of that many packets, rounded up.
inline std::uint64_t min_buffer_zero_loss(const TimeSeries& arrivals, ServiceConfig service,
                                          std::uint64_t seed, std::uint64_t buffer_width = 1) {
    if (buffer_width == 0) throw std::invalid_argument("buffer width must be >= 1");
    const QueueStats st = simulate_queue(arrivals, service, std::nullopt, seed);
    return (st.peak_backlog + buffer_width - 1) / buffer_width;
}

struct BufferSweepConfig {
    std::size_t n_sources = 50;
    double alpha = 1.0;
    double rate_tx = 1.0;  // pre-calibration rate; counts are rescaled below
    std::size_t slots = 200000;
    double bin_width = 1.0;
    double utilization = 0.8;  // arrival mean as a fraction of the service mean
    double warmup_fraction = 0.01;
    std::uint64_t buffer_width = 1;
    bool poisson_baseline = false;  // substitute a Poisson generator (SRD reference)
};

struct BufferSweepRow {
    double h_requested = 0.0;
    double beta = 0.0;
    double h_measured = 0.0;
    double arrival_mean = 0.0;
    double mean_occupancy = 0.0;
    std::uint64_t zero_loss_buffer = 0;
};

// For each target H: generate On/Off traffic with beta = 3 - 2H, rescale it
// so the realized per-slot mean is utilization * service mean, measure H by
// the variance-of-aggregates method, then run the infinite-buffer queue to
// read off mean occupancy and the zero-loss buffer requirement.  Row j uses
// sub-stream (seed, j) throughout, so rows are independent and the table is
// reproducible row by row.
inline std::vector<BufferSweepRow> sweep_buffer_vs_h(std::span<const double> h_targets,
                                                     const BufferSweepConfig& cfg,
                                                     ServiceConfig service,
                                                     std::uint64_t seed) {
    validate(service);
    if (!(cfg.utilization > 0.0 && cfg.utilization < 1.0))
        throw std::invalid_argument("sweep: utilization must lie in (0, 1)");
    std::vector<BufferSweepRow> rows;
    rows.reserve(h_targets.size());
    const auto warmup = static_cast<std::size_t>(
        std::llround(cfg.warmup_fraction * static_cast<double>(cfg.slots)));

    for (std::size_t j = 0; j < h_targets.size(); ++j) {
        const double h = h_targets[j];
        if (!(h > 0.5 && h < 1.0))
            throw std::invalid_argument("sweep: h target must lie in (0.5, 1)");
        const double beta = 3.0 - 2.0 * h;
        const std::uint64_t row_seed = substream_seed(seed, j);
        const double target_mean = cfg.utilization * service.rate_or_mean;

        TimeSeries trace;
        if (cfg.poisson_baseline) {
            trace = generate_poisson(target_mean / cfg.bin_width, cfg.slots + warmup,
                                     cfg.bin_width, substream_seed(row_seed, 0));
        } else {
            const auto cfgs = homogeneous_sources(cfg.n_sources, cfg.rate_tx,
                                                  ParetoParams{cfg.alpha, beta},
                                                  ParetoParams{cfg.alpha, beta});
            trace = generate_onoff(cfgs, cfg.slots + warmup, cfg.bin_width,
                                   substream_seed(row_seed, 0));
        }
        if (warmup > 0) trace = drop_prefix(trace, warmup);

        const double realized = series_mean(trace);
        if (realized > 0.0) scale_counts(trace, target_mean / realized);

        BufferSweepRow row;
        row.h_requested = h;
        row.beta = beta;
        row.h_measured = variance_aggregate_estimate(trace).h;
        row.arrival_mean = series_mean(trace);
        const QueueStats qs =
            simulate_queue(trace, service, std::nullopt, substream_seed(row_seed, 1));
        row.mean_occupancy = qs.mean_occupancy;
        row.zero_loss_buffer =
            (qs.peak_backlog + cfg.buffer_width - 1) / cfg.buffer_width;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace selfsim
