// nnhc: command-line front end.
//
//   cluster      build the hierarchy of a CSV dataset, export JSON/Newick/labels
//   bench-kstar  k_star of random 2-D datasets across sizes
//   scaling      build time per size and backend
//   oracle       hierarchy from the quadratic reference path (fixture generation)
//
// Exit codes: 0 ok, 2 I/O, 3 malformed data, 4 invalid flags.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nnhc.hpp"

namespace {

constexpr int kExitIo = 2;
constexpr int kExitData = 3;
constexpr int kExitFlags = 4;
constexpr std::uint64_t kDefaultSeed = 20220101;

struct FlagError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ClusterConfig {
    std::string input;
    std::string output;
    std::string metric = "euclidean";
    std::string backend = "kdtree";
    std::string format = "json";
    std::string partition = "none";
};

struct BenchConfig {
    std::vector<std::size_t> sizes;
    std::size_t trials = 20;
    std::uint64_t seed = kDefaultSeed;
    std::string dist = "uniform";
    std::string output;
    bool no_timing = false;
};

struct ScalingConfig {
    std::vector<std::size_t> sizes;
    std::string backend = "kdtree";
    std::size_t repeats = 1;
    std::uint64_t seed = kDefaultSeed;
    std::string output;
};

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw nnhc::IoError("cannot open output file '" + path + "'");
    out << content;
    out.close();
    if (!out) throw nnhc::IoError("write to '" + path + "' failed");
}

std::string fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::optional<nnhc::Partition> select_partition(const nnhc::Hierarchy& h, const std::string& mode) {
    if (mode == "natural") return nnhc::natural_partition(h);
    if (mode == "coarsest") return nnhc::coarsest_partition(h);
    return std::nullopt;
}

std::string render(const nnhc::Hierarchy& h, const ClusterConfig& cfg) {
    if (cfg.format == "newick") {
        return nnhc::io::to_newick(nnhc::to_tree(h));
    }
    const auto partition = select_partition(h, cfg.partition);
    if (cfg.format == "labels-csv") {
        return nnhc::io::labels_csv(nnhc::flat_labels(*partition));
    }
    return nnhc::io::hierarchy_document(h, partition ? &*partition : nullptr, cfg.partition);
}

void print_summary(std::ostream& out, const nnhc::Dataset& data, const nnhc::Hierarchy& h) {
    out << "points: " << data.size() << "\n";
    out << "dimension: " << data.dim() << "\n";
    out << "k_star: " << h.k_star() << "\n";
    out << "clusters per distinct level (k:I_k):";
    for (const std::size_t k : h.distinct_levels()) {
        out << ' ' << k << ':' << h.level(k).cluster_count();
    }
    out << "\n";
}

int run_cluster(const ClusterConfig& cfg, bool use_oracle) {
    using Clock = std::chrono::steady_clock;
    if (cfg.format == "labels-csv" && cfg.partition == "none") {
        throw FlagError("--format labels-csv needs --partition natural|coarsest");
    }
    if (cfg.format == "newick" && cfg.partition != "none") {
        throw FlagError("--partition only applies to --format json or labels-csv");
    }
    auto start = Clock::now();
    const nnhc::Dataset data = nnhc::io::read_csv_file(cfg.input);
    const double read_seconds = seconds_since(start);
    const nnhc::Metric metric = nnhc::metric_from_name(cfg.metric);
    const nnhc::Backend backend = nnhc::backend_from_name(cfg.backend);
    if (cfg.partition != "none" && data.size() < 2) {
        throw nnhc::DegenerateInput("a partition needs at least two points");
    }

    nnhc::BuildStats stats;
    start = Clock::now();
    const nnhc::Hierarchy h = use_oracle ? nnhc::oracle::oracle_hierarchy(data, metric)
                                         : nnhc::build_hierarchy(data, metric, backend, &stats);
    const double build_seconds = seconds_since(start);

    start = Clock::now();
    const std::string artifact = render(h, cfg);
    write_output(cfg.output, artifact);
    const double write_seconds = seconds_since(start);

    std::ostream& summary = cfg.output.empty() || cfg.output == "-" ? std::cerr : std::cout;
    print_summary(summary, data, h);
    summary << "timing (s): read=" << fixed(read_seconds, 6);
    if (use_oracle) {
        summary << " oracle=" << fixed(build_seconds, 6);
    } else {
        summary << " index=" << fixed(stats.index_seconds, 6)
                << " neighbors=" << fixed(stats.neighbor_seconds, 6) << " (depth "
                << stats.table_depth << ")"
                << " levels=" << fixed(stats.level_seconds, 6);
    }
    summary << " output=" << fixed(write_seconds, 6) << "\n";
    return 0;
}

void check_sizes(const std::vector<std::size_t>& sizes) {
    if (sizes.empty()) throw FlagError("--n needs at least one size");
    for (const std::size_t n : sizes) {
        if (n < 2) throw FlagError("every --n value must be at least 2");
    }
}

int run_bench(const BenchConfig& cfg) {
    check_sizes(cfg.sizes);
    if (cfg.trials < 1) throw FlagError("--trials must be at least 1");
    const auto samples =
        nnhc::bench::kstar_growth(cfg.sizes, cfg.trials, cfg.seed, nnhc::distribution_from_name(cfg.dist));
    std::ostringstream csv;
    csv << "n,trial,k_star,k_star_over_ln_n" << (cfg.no_timing ? "" : ",wall_time") << "\n";
    for (const auto& s : samples) {
        csv << s.n << ',' << s.trial << ',' << s.k_star << ',' << fixed(s.k_star_over_ln_n, 6);
        if (!cfg.no_timing) csv << ',' << fixed(s.seconds, 6);
        csv << "\n";
    }
    write_output(cfg.output, csv.str());
    return 0;
}

int run_scaling(const ScalingConfig& cfg) {
    check_sizes(cfg.sizes);
    if (cfg.repeats < 1) throw FlagError("--repeats must be at least 1");
    const auto samples = nnhc::bench::build_scaling(cfg.sizes, nnhc::backend_from_name(cfg.backend),
                                                    cfg.repeats, cfg.seed);
    std::ostringstream csv;
    csv << "n,backend,seconds\n";
    for (const auto& s : samples) {
        csv << s.n << ',' << nnhc::to_string(s.backend) << ',' << fixed(s.seconds, 6) << "\n";
    }
    write_output(cfg.output, csv.str());
    return 0;
}

void add_cluster_flags(CLI::App& cmd, ClusterConfig& cfg, bool with_backend) {
    cmd.add_option("--input", cfg.input, "CSV file, one point per row")->required();
    cmd.add_option("--output", cfg.output, "destination file (default: standard output)");
    cmd.add_option("--metric", cfg.metric, "distance function")
        ->check(CLI::IsMember({"euclidean", "manhattan", "chebyshev"}))
        ->capture_default_str();
    if (with_backend) {
        cmd.add_option("--backend", cfg.backend, "nearest-neighbor backend")
            ->check(CLI::IsMember({"brute", "kdtree"}))
            ->capture_default_str();
    }
    cmd.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"json", "newick", "labels-csv"}))
        ->capture_default_str();
    cmd.add_option("--partition", cfg.partition, "flat partition to export")
        ->check(CLI::IsMember({"natural", "coarsest", "none"}))
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nearest-neighbor cluster hierarchy"};
    app.require_subcommand(1);

    ClusterConfig cluster_cfg;
    auto* cluster = app.add_subcommand("cluster", "build and export the hierarchy of a dataset");
    add_cluster_flags(*cluster, cluster_cfg, true);

    ClusterConfig oracle_cfg;
    auto* oracle = app.add_subcommand("oracle", "same export computed by the brute-force reference");
    add_cluster_flags(*oracle, oracle_cfg, false);

    BenchConfig bench_cfg;
    auto* bench = app.add_subcommand("bench-kstar", "k_star growth on random 2-D data");
    bench->add_option("--n", bench_cfg.sizes, "dataset sizes")->required()->expected(1, -1);
    bench->add_option("--trials", bench_cfg.trials, "datasets per size")->capture_default_str();
    bench->add_option("--seed", bench_cfg.seed, "base seed")->capture_default_str();
    bench->add_option("--dist", bench_cfg.dist, "point distribution")
        ->check(CLI::IsMember({"uniform", "gaussian"}))
        ->capture_default_str();
    bench->add_option("--output", bench_cfg.output, "destination file (default: standard output)");
    bench->add_flag("--no-timing", bench_cfg.no_timing, "omit the wall_time column");

    ScalingConfig scaling_cfg;
    auto* scaling = app.add_subcommand("scaling", "build_hierarchy wall time per size");
    scaling->add_option("--n", scaling_cfg.sizes, "dataset sizes")->required()->expected(1, -1);
    scaling->add_option("--backend", scaling_cfg.backend, "nearest-neighbor backend")
        ->check(CLI::IsMember({"brute", "kdtree"}))
        ->capture_default_str();
    scaling->add_option("--repeats", scaling_cfg.repeats, "runs per size; the median is reported")
        ->capture_default_str();
    scaling->add_option("--seed", scaling_cfg.seed, "base seed")->capture_default_str();
    scaling->add_option("--output", scaling_cfg.output, "destination file (default: standard output)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitFlags;
    }

    try {
        if (*cluster) return run_cluster(cluster_cfg, false);
        if (*oracle) return run_cluster(oracle_cfg, true);
        if (*bench) return run_bench(bench_cfg);
        if (*scaling) return run_scaling(scaling_cfg);
    } catch (const FlagError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFlags;
    } catch (const nnhc::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const nnhc::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const nnhc::DegenerateInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitFlags;
}
