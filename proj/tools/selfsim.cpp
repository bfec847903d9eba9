// Command-line front end: traffic generation, Hurst estimation, contention
// element simulation, and sweep tables.  Every output starts with '#'
// manifest lines (toolkit version + the canonical command) sufficient to
// reproduce the data lines byte-identically.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <selfsim/selfsim.hpp>

namespace {

using namespace selfsim;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt(double v) { return format_double(v); }

void write_manifest(std::ostream& out, const std::string& command) {
    out << "# selfsim " << selfsim::version << "\n# command: " << command << "\n";
}

// Data goes to --out (or stdout for "-"); errors never touch this stream.
class OutputTarget {
  public:
    explicit OutputTarget(const std::string& path) : path_(path) {
        if (path_ != "-") {
            file_.open(path_);
            if (!file_) throw std::runtime_error("cannot open for writing: " + path_);
        }
    }
    std::ostream& stream() { return path_ == "-" ? std::cout : file_; }
    void finish() {
        stream().flush();
        if (!stream()) throw std::runtime_error("write failed: " + path_);
    }

  private:
    std::string path_;
    std::ofstream file_;
};

ServiceConfig parse_service(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    if (colon == std::string::npos)
        throw UsageError("service must be det:RATE or exp:MEAN, got '" + spec + "'");
    const std::string kind = spec.substr(0, colon);
    double value = 0.0;
    try {
        value = std::stod(spec.substr(colon + 1));
    } catch (const std::exception&) {
        throw UsageError("service must be det:RATE or exp:MEAN, got '" + spec + "'");
    }
    if (!(value > 0.0)) throw UsageError("service rate/mean must be > 0, got '" + spec + "'");
    if (kind == "det") return ServiceConfig{ServiceKind::Deterministic, value};
    if (kind == "exp") return ServiceConfig{ServiceKind::Exponential, value};
    throw UsageError("unknown service kind '" + kind + "' (use det or exp)");
}

std::optional<std::uint64_t> parse_capacity(const std::string& spec) {
    if (spec == "inf") return std::nullopt;
    try {
        const long long v = std::stoll(spec);
        if (v < 0) throw UsageError("capacity must be >= 0 or 'inf'");
        return static_cast<std::uint64_t>(v);
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception&) {
        throw UsageError("capacity must be an integer or 'inf', got '" + spec + "'");
    }
}

std::size_t warmup_slots(double fraction, std::size_t slots) {
    if (fraction < 0.0 || fraction >= 1.0) throw UsageError("warmup fraction must be in [0, 1)");
    return static_cast<std::size_t>(std::llround(fraction * static_cast<double>(slots)));
}

// ---------------------------------------------------------------- generate

struct GenerateOpts {
    std::string model;
    std::size_t sources = 100;
    double alpha = 1.0;
    double beta_on = 1.5;
    double beta_off = 1.5;
    double rate = 1.0;
    double lambda = 0.0;
    bool lambda_given = false;
    std::size_t slots = 0;
    double bin_width = 1.0;
    double warmup = 0.01;
    double cap = 0.0;
    bool cap_given = false;
    bool integer_counts = false;
    std::uint64_t seed = 1;
    std::string out;
};

std::string generate_command(const GenerateOpts& o) {
    std::ostringstream c;
    c << "generate --model " << o.model;
    if (o.model == "poisson") {
        c << " --lambda " << fmt(o.lambda);
    } else {
        c << " --sources " << o.sources << " --alpha " << fmt(o.alpha);
        if (o.model == "onoff")
            c << " --beta-on " << fmt(o.beta_on) << " --beta-off " << fmt(o.beta_off);
        c << " --rate " << fmt(o.rate);
        if (o.cap_given) c << " --cap " << fmt(o.cap);
    }
    c << " --slots " << o.slots << " --bin-width " << fmt(o.bin_width) << " --warmup "
      << fmt(o.warmup) << " --seed " << o.seed;
    if (o.integer_counts) c << " --integer-counts";
    c << " --out " << o.out;
    return c.str();
}

int run_generate(const GenerateOpts& o) {
    if (o.model == "poisson") {
        if (!o.lambda_given) throw UsageError("--lambda is required for --model poisson");
        if (o.cap_given) throw UsageError("--cap does not apply to --model poisson");
    } else if (o.lambda_given) {
        throw UsageError("--lambda only applies to --model poisson");
    }

    const std::size_t warm = warmup_slots(o.warmup, o.slots);
    const double cap =
        o.cap_given ? o.cap : std::numeric_limits<double>::infinity();

    TimeSeries trace;
    if (o.model == "poisson") {
        trace = generate_poisson(o.lambda, o.slots + warm, o.bin_width, o.seed);
    } else if (o.model == "onoff") {
        auto cfgs = homogeneous_sources(o.sources, o.rate, ParetoParams{o.alpha, o.beta_on},
                                        ParetoParams{o.alpha, o.beta_off});
        for (auto& c : cfgs) c.duration_cap = cap;
        trace = generate_onoff(cfgs, o.slots + warm, o.bin_width, o.seed);
    } else {  // client-server
        auto cfgs = client_server_configs(o.sources, o.alpha, o.rate);
        for (auto& c : cfgs) c.duration_cap = cap;
        trace = generate_onoff(cfgs, o.slots + warm, o.bin_width, o.seed);
    }
    if (warm > 0) trace = drop_prefix(trace, warm);
    if (o.integer_counts) integerize_floor_carry(trace.counts);

    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot open for writing: " + o.out);
    write_manifest(f, generate_command(o));
    write_counts(trace, f);
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + o.out);

    double total = 0.0;
    for (double c : trace.counts) total += c;
    std::cout << "wrote " << trace.size() << " slots to " << o.out << "\n"
              << "total_packets=" << fmt(total) << " mean_rate="
              << fmt(total / (static_cast<double>(trace.size()) * trace.bin_width)) << "\n";
    return kExitOk;
}

// ---------------------------------------------------------------- estimate

struct EstimateOpts {
    std::string input;
    std::string method = "both";
    double fit_min = 0.0;
    double fit_max = 0.0;
    bool fit_min_given = false;
    bool fit_max_given = false;
    std::string points_out;
};

std::string estimate_command(const EstimateOpts& o) {
    std::ostringstream c;
    c << "estimate --method " << o.method << " --input " << o.input;
    if (o.fit_min_given) c << " --fit-min " << fmt(o.fit_min);
    if (o.fit_max_given) c << " --fit-max " << fmt(o.fit_max);
    if (!o.points_out.empty()) c << " --points-out " << o.points_out;
    return c.str();
}

void print_estimate(const HurstEstimate& est, const char* name) {
    std::cout << name << ": h=" << fmt(est.h) << " slope=" << fmt(est.slope)
              << " intercept=" << fmt(est.intercept) << " r2=" << fmt(est.r_squared)
              << " window=[" << fmt(est.window.lo) << "," << fmt(est.window.hi) << "]";
    if (!est.h_in_unit_interval) std::cout << " WARNING: h outside (0,1)";
    std::cout << "\n";
}

void write_points(std::ostream& out, const HurstEstimate& est, const char* name) {
    for (const auto& [lx, ly] : est.points) {
        const bool in = lx >= est.window.lo && lx <= est.window.hi;
        out << name << ',' << fmt(lx) << ',' << fmt(ly) << ',' << (in ? 1 : 0) << '\n';
    }
}

int run_estimate(const EstimateOpts& o) {
    const TimeSeries s = read_counts(o.input);
    const bool do_av = o.method == "av" || o.method == "both";
    const bool do_rs = o.method == "rs" || o.method == "both";

    std::optional<HurstEstimate> av, rs;
    if (do_av) {
        FitWindow w = default_av_window();
        if (o.fit_min_given) w.lo = o.fit_min;
        if (o.fit_max_given) w.hi = o.fit_max;
        av = variance_aggregate_estimate(s, default_aggregation_levels(s.size()), w);
        print_estimate(*av, "av");
    }
    if (do_rs) {
        FitWindow w = default_rs_window(s.size());
        if (o.fit_min_given) w.lo = o.fit_min;
        if (o.fit_max_given) w.hi = o.fit_max;
        rs = rs_estimate(s, default_rs_block_sizes(s.size()), w);
        print_estimate(*rs, "rs");
    }

    if (!o.points_out.empty()) {
        OutputTarget target(o.points_out);
        write_manifest(target.stream(), estimate_command(o));
        target.stream() << "method,log10_x,log10_y,in_window\n";
        if (av) write_points(target.stream(), *av, "av");
        if (rs) write_points(target.stream(), *rs, "rs");
        target.finish();
    }
    return kExitOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateOpts {
    std::string arrivals;
    std::string service;
    std::string capacity = "inf";
    std::uint64_t seed = 1;
    std::string out = "-";
    std::string occupancy_out;
};

std::string simulate_command(const SimulateOpts& o) {
    std::ostringstream c;
    c << "simulate --arrivals " << o.arrivals << " --service " << o.service << " --capacity "
      << o.capacity << " --seed " << o.seed << " --out " << o.out;
    if (!o.occupancy_out.empty()) c << " --occupancy-out " << o.occupancy_out;
    return c.str();
}

int run_simulate(const SimulateOpts& o) {
    const ServiceConfig svc = parse_service(o.service);
    const auto cap = parse_capacity(o.capacity);
    const TimeSeries arrivals = read_counts(o.arrivals);
    const QueueStats st = simulate_queue(arrivals, svc, cap, o.seed);

    OutputTarget target(o.out);
    write_manifest(target.stream(), simulate_command(o));
    target.stream() << "total_arrivals,served,lost,final_occupancy,mean_occupancy,max_occupancy\n"
                    << st.total_arrivals << ',' << st.served << ',' << st.lost << ','
                    << st.final_occupancy() << ',' << fmt(st.mean_occupancy) << ','
                    << st.max_occupancy << '\n';
    target.finish();

    if (!o.occupancy_out.empty()) {
        OutputTarget occ(o.occupancy_out);
        write_manifest(occ.stream(), simulate_command(o));
        occ.stream() << "slot,occupancy\n";
        for (std::size_t k = 0; k < st.occupancy.size(); ++k)
            occ.stream() << k << ',' << st.occupancy[k] << '\n';
        occ.finish();
    }
    return kExitOk;
}

// ---------------------------------------------------------------- sweep

struct SweepOpts {
    std::string kind;
    std::vector<double> betas;
    std::vector<std::size_t> nsources;
    std::vector<double> h_targets;
    std::size_t sources = 100;
    double alpha = 1.0;
    double rate = 1.0;
    std::size_t slots = 200000;
    double bin_width = 1.0;
    double warmup = 0.01;
    std::string service;
    double utilization = 0.8;
    std::uint64_t buffer_width = 1;
    bool poisson_baseline = false;
    std::uint64_t seed = 1;
    std::string out = "-";
};

std::string sweep_command(const SweepOpts& o) {
    std::ostringstream c;
    c << "sweep --kind " << o.kind;
    auto list = [&c](const char* flag, const auto& values) {
        for (const auto& v : values) c << ' ' << flag << ' ' << v;
    };
    if (o.kind == "h-vs-beta") {
        for (double b : o.betas) c << " --betas " << fmt(b);
        c << " --sources " << o.sources << " --alpha " << fmt(o.alpha) << " --rate "
          << fmt(o.rate);
    } else if (o.kind == "h-vs-nsources") {
        list("--nsources", o.nsources);
        c << " --alpha " << fmt(o.alpha) << " --rate " << fmt(o.rate);
    } else {
        for (double h : o.h_targets) c << " --h-targets " << fmt(h);
        c << " --sources " << o.sources << " --alpha " << fmt(o.alpha) << " --rate "
          << fmt(o.rate) << " --service " << o.service << " --utilization "
          << fmt(o.utilization) << " --buffer-width " << o.buffer_width;
        if (o.poisson_baseline) c << " --poisson-baseline";
    }
    c << " --slots " << o.slots << " --bin-width " << fmt(o.bin_width) << " --warmup "
      << fmt(o.warmup) << " --seed " << o.seed << " --out " << o.out;
    return c.str();
}

int run_sweep(const SweepOpts& o) {
    OutputTarget target(o.out);
    std::ostream& out = target.stream();
    const std::size_t warm = warmup_slots(o.warmup, o.slots);

    if (o.kind == "h-vs-beta") {
        if (o.betas.empty()) throw UsageError("--betas is required for h-vs-beta");
        write_manifest(out, sweep_command(o));
        out << "beta,h_theory,h_av,h_rs\n";
        for (std::size_t j = 0; j < o.betas.size(); ++j) {
            const double beta = o.betas[j];
            const auto cfgs = homogeneous_sources(o.sources, o.rate, ParetoParams{o.alpha, beta},
                                                  ParetoParams{o.alpha, beta});
            TimeSeries s =
                generate_onoff(cfgs, o.slots + warm, o.bin_width, substream_seed(o.seed, j));
            if (warm > 0) s = drop_prefix(s, warm);
            const HurstEstimate av = variance_aggregate_estimate(s);
            const HurstEstimate rs = rs_estimate(s);
            out << fmt(beta) << ',' << fmt((3.0 - beta) / 2.0) << ',' << fmt(av.h) << ','
                << fmt(rs.h) << '\n';
        }
    } else if (o.kind == "h-vs-nsources") {
        if (o.nsources.empty()) throw UsageError("--nsources is required for h-vs-nsources");
        write_manifest(out, sweep_command(o));
        out << "n_clients,h_av\n";
        for (std::size_t j = 0; j < o.nsources.size(); ++j) {
            TimeSeries s = scenario_client_server(o.nsources[j], o.slots + warm, o.bin_width,
                                                  substream_seed(o.seed, j), o.alpha, o.rate);
            if (warm > 0) s = drop_prefix(s, warm);
            const HurstEstimate av = variance_aggregate_estimate(s);
            out << o.nsources[j] << ',' << fmt(av.h) << '\n';
        }
    } else if (o.kind == "buffer-vs-h") {
        if (o.h_targets.empty()) throw UsageError("--h-targets is required for buffer-vs-h");
        if (o.service.empty()) throw UsageError("--service is required for buffer-vs-h");
        const ServiceConfig svc = parse_service(o.service);
        BufferSweepConfig cfg;
        cfg.n_sources = o.sources;
        cfg.alpha = o.alpha;
        cfg.rate_tx = o.rate;
        cfg.slots = o.slots;
        cfg.bin_width = o.bin_width;
        cfg.utilization = o.utilization;
        cfg.warmup_fraction = o.warmup;
        cfg.buffer_width = o.buffer_width;
        cfg.poisson_baseline = o.poisson_baseline;
        const auto rows = sweep_buffer_vs_h(o.h_targets, cfg, svc, o.seed);
        write_manifest(out, sweep_command(o));
        out << "h_requested,beta,h_measured,arrival_mean,mean_occupancy,zero_loss_buffer\n";
        for (const BufferSweepRow& r : rows)
            out << fmt(r.h_requested) << ',' << fmt(r.beta) << ',' << fmt(r.h_measured) << ','
                << fmt(r.arrival_mean) << ',' << fmt(r.mean_occupancy) << ','
                << r.zero_loss_buffer << '\n';
    } else {
        throw UsageError("unknown sweep kind '" + o.kind + "'");
    }
    target.finish();
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"self-similar traffic toolkit: generate, estimate, simulate, sweep"};
    app.require_subcommand(1);

    GenerateOpts gen;
    CLI::App* g = app.add_subcommand("generate", "synthesize a packet-count trace");
    g->add_option("--model", gen.model, "onoff | poisson | client-server")
        ->required()
        ->check(CLI::IsMember({"onoff", "poisson", "client-server"}));
    g->add_option("--sources", gen.sources, "number of On/Off sources (clients for client-server)");
    g->add_option("--alpha", gen.alpha, "Pareto scale for On/Off durations");
    g->add_option("--beta-on", gen.beta_on, "Pareto shape of On durations");
    g->add_option("--beta-off", gen.beta_off, "Pareto shape of Off durations");
    g->add_option("--rate", gen.rate, "per-source transmission rate while On");
    auto* lam = g->add_option("--lambda", gen.lambda, "Poisson arrival rate");
    g->add_option("--slots", gen.slots, "number of output bins")->required();
    g->add_option("--bin-width", gen.bin_width, "bin width T in time units");
    g->add_option("--warmup", gen.warmup,
                  "fraction of slots generated extra and discarded up front");
    auto* cap = g->add_option("--cap", gen.cap, "truncate sampled durations at this value");
    g->add_flag("--integer-counts", gen.integer_counts,
                "round counts to whole packets (floor with carried remainder)");
    g->add_option("--seed", gen.seed, "master seed");
    g->add_option("--out", gen.out, "output trace path")->required();

    EstimateOpts est;
    CLI::App* e = app.add_subcommand("estimate", "estimate the Hurst parameter of a trace");
    e->add_option("--input", est.input, "trace file")->required();
    e->add_option("--method", est.method, "av | rs | both")
        ->check(CLI::IsMember({"av", "rs", "both"}));
    auto* fmin = e->add_option("--fit-min", est.fit_min, "fit window lower bound (log10)");
    auto* fmax = e->add_option("--fit-max", est.fit_max, "fit window upper bound (log10)");
    e->add_option("--points-out", est.points_out, "write (log10 x, log10 y, in_window) CSV here");

    SimulateOpts sim;
    CLI::App* s = app.add_subcommand("simulate", "run a trace through the contention element");
    s->add_option("--arrivals", sim.arrivals, "arrival trace file")->required();
    s->add_option("--service", sim.service, "det:RATE or exp:MEAN (packets per slot)")
        ->required();
    s->add_option("--capacity", sim.capacity, "buffer capacity in packets, or 'inf'");
    s->add_option("--seed", sim.seed, "master seed (exponential service)");
    s->add_option("--out", sim.out, "summary CSV path, '-' for stdout");
    s->add_option("--occupancy-out", sim.occupancy_out, "per-slot occupancy CSV path");

    SweepOpts sw;
    CLI::App* w = app.add_subcommand("sweep", "tabulate H laws and buffer demand");
    w->add_option("--kind", sw.kind, "h-vs-beta | h-vs-nsources | buffer-vs-h")
        ->required()
        ->check(CLI::IsMember({"h-vs-beta", "h-vs-nsources", "buffer-vs-h"}));
    w->add_option("--betas", sw.betas, "Pareto shapes for h-vs-beta");
    w->add_option("--nsources", sw.nsources, "client counts for h-vs-nsources");
    w->add_option("--h-targets", sw.h_targets, "target H values for buffer-vs-h");
    w->add_option("--sources", sw.sources, "sources per generated trace");
    w->add_option("--alpha", sw.alpha, "Pareto scale");
    w->add_option("--rate", sw.rate, "per-source rate while On");
    w->add_option("--slots", sw.slots, "bins per generated trace");
    w->add_option("--bin-width", sw.bin_width, "bin width T");
    w->add_option("--warmup", sw.warmup, "warm-up fraction discarded");
    w->add_option("--service", sw.service, "det:RATE or exp:MEAN for buffer-vs-h");
    w->add_option("--utilization", sw.utilization, "arrival mean / service mean");
    w->add_option("--buffer-width", sw.buffer_width, "packets per reported buffer unit");
    w->add_flag("--poisson-baseline", sw.poisson_baseline,
                "substitute a Poisson generator (SRD reference)");
    w->add_option("--seed", sw.seed, "master seed");
    w->add_option("--out", sw.out, "table CSV path, '-' for stdout");

    CLI11_PARSE(app, argc, argv);
    gen.lambda_given = lam->count() > 0;
    gen.cap_given = cap->count() > 0;
    est.fit_min_given = fmin->count() > 0;
    est.fit_max_given = fmax->count() > 0;

    try {
        if (g->parsed()) return run_generate(gen);
        if (e->parsed()) return run_estimate(est);
        if (s->parsed()) return run_simulate(sim);
        if (w->parsed()) return run_sweep(sw);
    } catch (const UsageError& ex) {
        std::cerr << "usage error: " << ex.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
