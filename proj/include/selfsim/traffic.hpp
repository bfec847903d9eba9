#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "pareto.hpp"
#include "rng.hpp"
#include "series.hpp"

namespace selfsim {

enum class Phase : std::uint8_t { Off = 0, On = 1 };

// One On/Off source: fixed transmission rate while On, silent while Off,
// phase durations drawn from Pareto laws.
struct SourceConfig {
    double rate_tx = 1.0;  // packets per time unit while On
    ParetoParams on_dist;  // tau_on
    ParetoParams off_dist; // tau_off
    // optional tail truncation of sampled durations; +inf means none
    double duration_cap = std::numeric_limits<double>::infinity();
};

inline void validate(const SourceConfig& c) {
    if (!(c.rate_tx > 0.0)) throw std::invalid_argument("source rate_tx must be > 0");
    validate(c.on_dist);
    validate(c.off_dist);
    if (!(c.duration_cap > 0.0)) throw std::invalid_argument("duration cap must be > 0");
}

struct SourceState {
    Phase phase = Phase::Off;
    double residual = 0.0;  // time left in the current phase
};

namespace detail {

// Flip the phase and draw the full duration of the phase just entered.
inline void toggle_phase(SourceState& st, const SourceConfig& cfg, Rng& g) {
    st.phase = (st.phase == Phase::On) ? Phase::Off : Phase::On;
    const ParetoParams& d = (st.phase == Phase::On) ? cfg.on_dist : cfg.off_dist;
    st.residual = pareto_sample(g, d, cfg.duration_cap);
}

}  // namespace detail

// Initial phase from the sign of a standard-normal draw: negative -> Off,
// positive -> On (an exact zero counts as On so the rule is total), then a
// full duration sampled from the matching distribution.  Exactly two draws
// per source, normal first.
inline SourceState init_source(const SourceConfig& cfg, Rng& g) {
    SourceState st;
    st.phase = (standard_normal(g) < 0.0) ? Phase::Off : Phase::On;
    const ParetoParams& d = (st.phase == Phase::On) ? cfg.on_dist : cfg.off_dist;
    st.residual = pareto_sample(g, d, cfg.duration_cap);
    return st;
}

inline std::vector<SourceState> init_sources(std::span<const SourceConfig> cfgs, Rng& g) {
    std::vector<SourceState> out;
    out.reserve(cfgs.size());
    for (const SourceConfig& c : cfgs) out.push_back(init_source(c, g));
    return out;
}

// Advance one source by exactly T time units, toggling phases as residuals
// expire, and return rate_tx * (On time inside the interval).  A residual
// that reaches exactly 0 switches phase immediately, so the state handed
// back always carries a positive residual into the next bin.
inline double source_step(SourceState& st, const SourceConfig& cfg, double T, Rng& g) {
    if (!(T > 0.0)) throw std::invalid_argument("source_step: T must be > 0");
    double remaining = T;
    double on_time = 0.0;
    while (remaining > 0.0) {
        if (st.residual <= 0.0) {
            detail::toggle_phase(st, cfg, g);
            continue;
        }
        const double d = (st.residual < remaining) ? st.residual : remaining;
        if (st.phase == Phase::On) on_time += d;
        st.residual -= d;
        remaining -= d;
    }
    if (st.residual <= 0.0) detail::toggle_phase(st, cfg, g);
    return cfg.rate_tx * on_time;
}

// One source's whole contribution, drawn from its own stream.
inline TimeSeries generate_source(const SourceConfig& cfg, std::size_t slots, double T,
                                  std::uint64_t stream_seed) {
    validate(cfg);
    if (slots == 0) throw std::invalid_argument("generate_source: slots must be >= 1");
    if (!(T > 0.0)) throw std::invalid_argument("generate_source: T must be > 0");
    TimeSeries out{T, std::vector<double>(slots, 0.0)};
    Rng g = make_rng(stream_seed);
    SourceState st = init_source(cfg, g);
    for (double& c : out.counts) c = source_step(st, cfg, T, g);
    return out;
}

// Aggregate arrival process of independent On/Off sources.  Source i draws
// from sub-stream (seed, i), so replacing or reseeding one source leaves
// every other contribution bit-identical.
inline TimeSeries generate_onoff(std::span<const SourceConfig> cfgs, std::size_t slots,
                                 double T, std::uint64_t seed) {
    if (cfgs.empty()) throw std::invalid_argument("generate_onoff: no sources");
    if (slots == 0) throw std::invalid_argument("generate_onoff: slots must be >= 1");
    if (!(T > 0.0)) throw std::invalid_argument("generate_onoff: T must be > 0");
    for (const SourceConfig& c : cfgs) validate(c);
    TimeSeries out{T, std::vector<double>(slots, 0.0)};
    for (std::size_t i = 0; i < cfgs.size(); ++i) {
        Rng g = make_rng(substream_seed(seed, i));
        SourceState st = init_source(cfgs[i], g);
        for (double& c : out.counts) c += source_step(st, cfgs[i], T, g);
    }
    return out;
}

// Memoryless baseline: independent Poisson counts with mean lambda*T per bin.
inline TimeSeries generate_poisson(double lambda, std::size_t slots, double T,
                                   std::uint64_t seed) {
    if (!(lambda > 0.0)) throw std::invalid_argument("generate_poisson: lambda must be > 0");
    if (slots == 0) throw std::invalid_argument("generate_poisson: slots must be >= 1");
    if (!(T > 0.0)) throw std::invalid_argument("generate_poisson: T must be > 0");
    TimeSeries out{T, std::vector<double>(slots, 0.0)};
    Rng g = make_rng(substream_seed(seed, 0));
    const double mean = lambda * T;
    for (double& c : out.counts) c = static_cast<double>(poisson_sample(g, mean));
    return out;
}

inline std::vector<SourceConfig> homogeneous_sources(std::size_t n, double rate_tx,
                                                     ParetoParams on_dist,
                                                     ParetoParams off_dist) {
    return std::vector<SourceConfig>(n, SourceConfig{rate_tx, on_dist, off_dist});
}

// Ethernet client/server mix: clients send short requests (short-tail On,
// beta 1.9) separated by long idle gaps (long-tail Off, beta 1.1); the one
// server has the opposite tails.  Order is clients first, server last.
inline std::vector<SourceConfig> client_server_configs(std::size_t n_clients,
                                                       double alpha = 1.0,
                                                       double rate_tx = 1.0) {
    std::vector<SourceConfig> cfgs(
        n_clients, SourceConfig{rate_tx, ParetoParams{alpha, 1.9}, ParetoParams{alpha, 1.1}});
    cfgs.push_back(SourceConfig{rate_tx, ParetoParams{alpha, 1.1}, ParetoParams{alpha, 1.9}});
    return cfgs;
}

inline TimeSeries scenario_client_server(std::size_t n_clients, std::size_t slots, double T,
                                         std::uint64_t seed, double alpha = 1.0,
                                         double rate_tx = 1.0) {
    if (n_clients == 0) throw std::invalid_argument("scenario_client_server: need >= 1 client");
    const std::vector<SourceConfig> cfgs = client_server_configs(n_clients, alpha, rate_tx);
    return generate_onoff(cfgs, slots, T, seed);
}

}  // namespace selfsim
