// Minimal tour: synthesize long-range-dependent traffic, estimate its Hurst
// parameter both ways, and size the buffer a contention element would need.

#include <iostream>

#include <selfsim/selfsim.hpp>

int main() {
    using namespace selfsim;

    // 50 homogeneous On/Off sources; beta = 1.5 targets H = (3 - 1.5)/2 = 0.75
    const auto sources =
        homogeneous_sources(50, 1.0, ParetoParams{1.0, 1.5}, ParetoParams{1.0, 1.5});
    TimeSeries trace = generate_onoff(sources, 200000, 1.0, 42);
    trace = drop_prefix(trace, 2000);  // discard the start-up transient

    const HurstEstimate av = variance_aggregate_estimate(trace);
    const HurstEstimate rs = rs_estimate(trace);
    std::cout << "aggregate-variance H = " << av.h << " (slope " << av.slope << ")\n"
              << "rescaled-range     H = " << rs.h << "\n";

    // scale the arrivals to 80% of an exponential server's mean rate
    const ServiceConfig service{ServiceKind::Exponential, 10.0};
    scale_counts(trace, 0.8 * service.rate_or_mean / series_mean(trace));

    const QueueStats stats = simulate_queue(trace, service, std::nullopt, 7);
    std::cout << "mean occupancy = " << stats.mean_occupancy << " packets\n"
              << "zero-loss buffer = " << min_buffer_zero_loss(trace, service, 7)
              << " packets\n";
    return 0;
}
