#include "mfic/cli.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "mfic/io.hpp"
#include "mfic/search.hpp"

namespace mfic::cli {

namespace {

namespace fs = std::filesystem;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty()) {
        out << content;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path + "'");
    f << content;
}

int default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Per-constraint fan-out; constraints are independent.
std::vector<CompressedTable> compress_all(const Instance& inst, const CompressionConfig& cfg,
                                          int jobs) {
    const int n = static_cast<int>(inst.constraints.size());
    std::vector<CompressedTable> out(n);
    jobs = std::clamp(jobs, 1, std::max(n, 1));
    std::atomic<int> next{0};
    std::mutex mtx;
    std::exception_ptr eptr;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            try {
                out[i] = compress_table(inst.constraints[i], cfg);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mtx);
                if (!eptr) eptr = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (eptr) std::rethrow_exception(eptr);
    return out;
}

CompressionConfig::Smin parse_smin(const std::string& s) {
    if (s == "min") return CompressionConfig::Smin::min;
    if (s == "avg") return CompressionConfig::Smin::avg;
    throw CLI::ValidationError("--smin-strategy", "must be min or avg");
}

CompressionConfig::Metric parse_metric(const std::string& s) {
    if (s == "area") return CompressionConfig::Metric::area;
    if (s == "savings") return CompressionConfig::Metric::savings;
    throw CLI::ValidationError("--metric", "must be area or savings");
}

SolveConfig::Prop parse_prop(const std::string& s) {
    if (s == "str2") return SolveConfig::Prop::str2;
    if (s == "str-mfic") return SolveConfig::Prop::str_mfic;
    throw CLI::ValidationError("--prop", "must be str2 or str-mfic");
}

std::string status_word(SolveResult::Status s) {
    switch (s) {
        case SolveResult::Status::sat: return "sat";
        case SolveResult::Status::unsat: return "unsat";
        default: return "limit";
    }
}

int status_exit_code(SolveResult::Status s) {
    switch (s) {
        case SolveResult::Status::sat: return 0;
        case SolveResult::Status::unsat: return 10;
        default: return 20;
    }
}

void print_stats_line(std::ostream& out, int index, const CompressionStats& s) {
    out << "constraint " << index << ": c-tup " << std::fixed << std::setprecision(2)
        << s.c_tup_pct << "% c-rate " << s.c_rate_pct << "% |M| " << s.n_itemsets << " |u| "
        << s.avg_len << " freq " << s.avg_freq << '\n';
    out.unsetf(std::ios::fixed);
}

// Whole-instance roll-up of per-table stats for the bench CSV.
CompressionStats aggregate_stats(const Instance& inst,
                                 const std::vector<CompressedTable>& cts) {
    CompressionStats agg;
    long long tuples = 0, compressed = 0, len_sum = 0, freq_sum = 0;
    for (std::size_t i = 0; i < cts.size(); ++i) {
        const CompressionStats s = compression_stats(inst.constraints[i], cts[i]);
        agg.cells_before += s.cells_before;
        agg.cells_after += s.cells_after;
        agg.n_itemsets += s.n_itemsets;
        tuples += static_cast<long long>(inst.constraints[i].tuples.size());
        for (const Entry& e : cts[i].entries) {
            compressed += static_cast<long long>(e.sub_tuples.size());
            len_sum += static_cast<long long>(e.itemset.size());
            freq_sum += static_cast<long long>(e.sub_tuples.size());
        }
    }
    if (tuples > 0) {
        agg.c_tup_pct = 100.0 * static_cast<double>(compressed) / static_cast<double>(tuples);
        agg.c_rate_pct = 100.0 * (1.0 - static_cast<double>(agg.cells_after) /
                                            static_cast<double>(agg.cells_before));
    }
    if (agg.n_itemsets > 0) {
        agg.avg_len = static_cast<double>(len_sum) / agg.n_itemsets;
        agg.avg_freq = static_cast<double>(freq_sum) / agg.n_itemsets;
    }
    return agg;
}

std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
    std::vector<std::string> files;
    for (const std::string& in : inputs) {
        if (fs::is_directory(in)) {
            std::vector<std::string> found;
            for (const auto& e : fs::directory_iterator(in))
                if (e.is_regular_file() && e.path().extension() == ".inst")
                    found.push_back(e.path().string());
            std::sort(found.begin(), found.end());
            files.insert(files.end(), found.begin(), found.end());
        } else {
            files.push_back(in);
        }
    }
    return files;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"compress and solve extensional table constraints"};
    app.name("mfic");
    app.require_subcommand(1);

    // compress
    std::string c_in, c_out, c_smin = "avg", c_metric = "area";
    double c_kratio = 0.4;
    bool c_stats = false;
    int c_jobs = default_jobs();
    auto* compress = app.add_subcommand("compress", "compress the tables of an instance");
    compress->add_option("input", c_in, "instance file")->required();
    compress->add_option("-o,--output", c_out, "output file (default: stdout)");
    compress->add_option("--k-ratio", c_kratio, "top-k size as a fraction of the tuple count");
    compress->add_option("--smin-strategy", c_smin, "min|avg");
    compress->add_option("--metric", c_metric, "area|savings");
    compress->add_flag("--stats", c_stats, "print per-constraint compression stats");
    compress->add_option("--jobs", c_jobs, "worker threads");

    // solve
    std::string s_in, s_prop, s_smin = "avg", s_metric = "area";
    double s_kratio = 0.4;
    bool s_all = false;
    double s_timeout = 0.0;
    long long s_nodes = 0;
    auto* solve_cmd = app.add_subcommand("solve", "solve an instance");
    solve_cmd->add_option("input", s_in, "instance file")->required();
    solve_cmd->add_option("--prop", s_prop, "str2|str-mfic")->required();
    solve_cmd->add_flag("--all", s_all, "count all solutions");
    solve_cmd->add_option("--timeout", s_timeout, "time limit in seconds");
    solve_cmd->add_option("--nodes", s_nodes, "node limit");
    solve_cmd->add_option("--k-ratio", s_kratio, "compression k-ratio (str-mfic)");
    solve_cmd->add_option("--smin-strategy", s_smin, "compression threshold strategy (str-mfic)");
    solve_cmd->add_option("--metric", s_metric, "compression metric (str-mfic)");

    // bench
    std::vector<std::string> b_in;
    std::string b_out, b_props = "str2,str-mfic";
    double b_timeout = 0.0;
    long long b_nodes = 0;
    int b_jobs = default_jobs();
    auto* bench = app.add_subcommand("bench", "run instances under each propagator");
    bench->add_option("inputs", b_in, "instance files or directories")->required();
    bench->add_option("--out", b_out, "CSV output file")->required();
    bench->add_option("--props", b_props, "comma-separated propagator list");
    bench->add_option("--timeout", b_timeout, "per-run time limit in seconds");
    bench->add_option("--nodes", b_nodes, "per-run node limit");
    bench->add_option("--jobs", b_jobs, "worker threads for compression");

    // gen
    GenParams g;
    std::string g_out;
    auto* gen = app.add_subcommand("gen", "generate a random instance");
    gen->add_option("--vars", g.n_vars, "number of variables")->required();
    gen->add_option("--dom", g.dom_size, "domain size")->required();
    gen->add_option("--arity", g.arity, "constraint arity")->required();
    gen->add_option("--constraints", g.n_constraints, "number of constraints")->required();
    gen->add_option("--tuples", g.tuples_per_constraint, "tuples per constraint")->required();
    gen->add_option("--seed", g.seed, "generator seed");
    gen->add_option("-o,--output", g_out, "output file (default: stdout)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (compress->parsed()) {
            const Instance inst = parse_instance(read_file(c_in));
            CompressionConfig cfg;
            cfg.k_ratio = c_kratio;
            cfg.smin_strategy = parse_smin(c_smin);
            cfg.metric = parse_metric(c_metric);
            const auto cts = compress_all(inst, cfg, c_jobs);
            std::string doc;
            for (std::size_t i = 0; i < cts.size(); ++i) {
                if (i) doc += '\n';
                doc += write_compressed(cts[i]);
            }
            write_output(c_out, doc, out);
            if (c_stats)
                for (std::size_t i = 0; i < cts.size(); ++i)
                    print_stats_line(out, static_cast<int>(i),
                                     compression_stats(inst.constraints[i], cts[i]));
            return 0;
        }
        if (solve_cmd->parsed()) {
            const Instance inst = parse_instance(read_file(s_in));
            SolveConfig cfg;
            cfg.propagator = parse_prop(s_prop);
            cfg.mode = s_all ? SolveConfig::Mode::count_all : SolveConfig::Mode::first;
            if (s_timeout > 0) cfg.time_limit_s = s_timeout;
            if (s_nodes > 0) cfg.node_limit = s_nodes;
            cfg.compression.k_ratio = s_kratio;
            cfg.compression.smin_strategy = parse_smin(s_smin);
            cfg.compression.metric = parse_metric(s_metric);
            const SolveResult res = solve(inst, cfg);
            out << "status " << status_word(res.status) << '\n';
            if (cfg.mode == SolveConfig::Mode::count_all) {
                out << res.stats.solution_count << " solutions\n";
            } else if (!res.solutions.empty()) {
                out << "solution";
                for (Value v : res.solutions.front()) out << ' ' << v;
                out << '\n';
            }
            out << "nodes " << res.stats.nodes << " backtracks " << res.stats.backtracks
                << " filters " << res.stats.filter_calls << " removals " << res.stats.removals
                << " time " << std::fixed << std::setprecision(2) << res.stats.wall_time_s
                << '\n';
            out.unsetf(std::ios::fixed);
            return status_exit_code(res.status);
        }
        if (bench->parsed()) {
            std::vector<std::string> props;
            {
                std::istringstream ss(b_props);
                std::string p;
                while (std::getline(ss, p, ',')) props.push_back(p);
            }
            std::vector<StatsRow> rows;
            for (const std::string& file : expand_inputs(b_in)) {
                const Instance inst = parse_instance(read_file(file));
                for (const std::string& prop : props) {
                    SolveConfig cfg;
                    cfg.propagator = parse_prop(prop);
                    if (b_timeout > 0) cfg.time_limit_s = b_timeout;
                    if (b_nodes > 0) cfg.node_limit = b_nodes;
                    StatsRow row;
                    row.instance = fs::path(file).filename().string();
                    row.method = prop;
                    if (cfg.propagator == SolveConfig::Prop::str_mfic)
                        row.comp = aggregate_stats(
                            inst, compress_all(inst, cfg.compression, b_jobs));
                    const SolveResult res = solve(inst, cfg);
                    row.solved = status_word(res.status);
                    row.nodes = res.stats.nodes;
                    row.time_s = res.stats.wall_time_s;
                    rows.push_back(std::move(row));
                }
            }
            write_output(b_out, write_stats_csv(rows), out);
            return 0;
        }
        if (gen->parsed()) {
            write_output(g_out, write_instance(gen_random(g)), out);
            return 0;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace mfic::cli
