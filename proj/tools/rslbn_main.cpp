#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "rslbn/eval.hpp"
#include "rslbn/fixtures.hpp"
#include "rslbn/io.hpp"
#include "rslbn/rsl.hpp"
#include "rslbn/synth.hpp"

namespace {

using namespace rslbn;

constexpr int kExitBadFile = 2;
constexpr int kExitUnknownVertex = 3;
constexpr int kExitLearnFailed = 4;

uint64_t default_seed() {
    if (const char* env = std::getenv("RSLBN_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw CLI::ValidationError("RSLBN_SEED", "not an unsigned integer");
        }
    }
    return 0;
}

std::vector<std::string> default_names(int n) {
    std::vector<std::string> names(n);
    for (int i = 0; i < n; ++i) names[i] = "X" + std::to_string(i);
    return names;
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

// ---- learn ----------------------------------------------------------------

struct LearnArgs {
    std::string algorithm = "rsl-d";
    std::string oracle_path;
    std::string data_path;
    int m = 0;
    double alpha = 0.01;
    double alpha_mb = -1.0;  // -1: 2/n^2
    uint64_t seed = 0;
    bool seed_given = false;
    std::string out_path;
};

struct LearnOutcome {
    LearnRunRecord record;
    Skeleton skeleton;
    SepSetMap sepsets;
};

LearnOutcome run_learn(const LearnArgs& args) {
    const bool oracle_mode = !args.oracle_path.empty();

    std::optional<NamedDag> truth;
    std::optional<NamedDataset> dataset;
    int n = 0;
    if (oracle_mode) {
        truth = read_graph_file(args.oracle_path);
        n = truth->dag.vertex_count();
    } else {
        dataset = read_dataset_csv_file(args.data_path);
        n = dataset->data.variable_count();
    }
    const double alpha_mb = args.alpha_mb > 0 ? args.alpha_mb : 2.0 / (static_cast<double>(n) * n);

    LearnOptions options;
    if (args.seed_given) options.tie_seed = args.seed;

    // Oracle answers do not depend on significance, so both phases share one
    // tester (and its cache); on data the phases run at their own levels.
    std::unique_ptr<OracleCiTester> oracle;
    std::unique_ptr<FisherZCiTester> fisher_mb, fisher_learn;
    std::unique_ptr<DependentOnSingularTester> guard_mb, guard_learn;
    std::unique_ptr<CountingCiTester> count_mb, count_learn;
    CountingCiTester* mb_tester = nullptr;
    CountingCiTester* learn_tester = nullptr;
    if (oracle_mode) {
        oracle = std::make_unique<OracleCiTester>(truth->dag);
        count_learn = std::make_unique<CountingCiTester>(*oracle);
        mb_tester = learn_tester = count_learn.get();
    } else {
        fisher_mb = std::make_unique<FisherZCiTester>(dataset->data, alpha_mb);
        guard_mb = std::make_unique<DependentOnSingularTester>(*fisher_mb);
        count_mb = std::make_unique<CountingCiTester>(*guard_mb);
        fisher_learn = std::make_unique<FisherZCiTester>(dataset->data, args.alpha);
        guard_learn = std::make_unique<DependentOnSingularTester>(*fisher_learn);
        count_learn = std::make_unique<CountingCiTester>(*guard_learn);
        mb_tester = count_mb.get();
        learn_tester = count_learn.get();
    }

    LearnOutcome out;
    out.record.algorithm = args.algorithm;
    out.record.mode = oracle_mode ? "oracle" : "data";
    out.record.n = n;
    out.record.seed = args.seed;
    out.record.alpha = args.alpha;
    out.record.alpha_mb = alpha_mb;

    const auto start = std::chrono::steady_clock::now();
    if (args.algorithm == "rsl-auto") {
        AutoResult auto_result = learn_skeleton_auto(*mb_tester, *learn_tester, n, options);
        out.record.mb_stats = auto_result.boundary_stats;
        out.record.m_used = auto_result.m_used;
        CiStats combined;
        for (const auto& s : auto_result.attempt_stats) {
            combined.total_tests += s.total_tests;
            combined.dedup_hits += s.dedup_hits;
            combined.conditioning_size_sum += s.conditioning_size_sum;
            combined.max_conditioning_size = std::max(combined.max_conditioning_size, s.max_conditioning_size);
        }
        out.record.stats = combined;
        out.record.fallback_used = auto_result.result.fallback_used;
        out.skeleton = std::move(auto_result.result.skeleton);
        out.sepsets = std::move(auto_result.result.sepsets);
        out.record.removal_order = std::move(auto_result.result.removal_order);
    } else {
        SideInfo side = args.algorithm == "rsl-omega" ? SideInfo::bounded_clique(args.m)
                                                      : SideInfo::diamond_free();
        if (args.algorithm == "rsl-omega") out.record.m = args.m;
        mb_tester->reset_phase();
        MarkovBoundaries mbs = compute_markov_boundaries(*mb_tester, n);
        out.record.mb_stats = mb_tester->phase_stats();
        LearnResult result = learn_skeleton(*learn_tester, std::move(mbs), side, options);
        out.record.stats = result.stats;
        out.record.fallback_used = result.fallback_used;
        out.skeleton = std::move(result.skeleton);
        out.sepsets = std::move(result.sepsets);
        out.record.removal_order = std::move(result.removal_order);
    }
    out.record.wall_time_ms = elapsed_ms(start);
    out.record.edges = out.skeleton.edges();
    out.record.sepsets = out.sepsets.entries();
    return out;
}

// ---- bench ----------------------------------------------------------------

struct BenchArgs {
    std::vector<int> n_list;
    double p_exponent = 0.82;
    std::string samples;  // "", absolute count, or multiplier like "50n"
    bool oracle = false;
    int repetitions = 10;
    std::vector<std::string> algorithms{"rsl-d"};
    int m_override = 0;  // 0: exact clique number per draw
    double alpha = 0.01;
    double alpha_mb = -1.0;
    uint64_t seed_base = 0;
    int threads = 1;
    std::string out_path;
};

int samples_for(const std::string& spec, int n) {
    if (spec.empty()) return 0;
    std::string s = spec;
    bool multiplier = false;
    if (s.back() == 'n' || s.back() == 'N') {
        multiplier = true;
        s.pop_back();
    }
    double v = 0;
    size_t used = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
    }
    if (used != s.size() || v <= 0) throw CLI::ValidationError("--samples", "expected e.g. 5000 or 50n");
    return static_cast<int>(multiplier ? v * n : v);
}

struct BenchRow {
    int n;
    double p;
    uint64_t seed;
    std::string algorithm;
    bool diamond_free;
    long long ci_tests;
    double asc;
    double runtime_ms;
    double f1, precision, recall;
    int shd;
};

BenchRow run_bench_job(const BenchArgs& args, int n, int rep, const std::string& algorithm) {
    const double p = std::pow(static_cast<double>(n), -args.p_exponent);
    const uint64_t seed = args.seed_base + static_cast<uint64_t>(rep);
    const Dag g = erdos_renyi_dag(n, p, derive_seed(seed, SeedStream::Graph));
    const Skeleton truth = skeleton_of(g);

    std::optional<GaussianDataset> data;
    if (!args.oracle) {
        SemModel model = draw_sem(g, derive_seed(seed, SeedStream::Model));
        data.emplace(sample_sem(model, samples_for(args.samples, n), derive_seed(seed, SeedStream::Data)));
    }
    const double alpha_mb = args.alpha_mb > 0 ? args.alpha_mb : 2.0 / (static_cast<double>(n) * n);

    std::unique_ptr<OracleCiTester> oracle;
    std::unique_ptr<FisherZCiTester> fisher_mb, fisher_learn;
    std::unique_ptr<DependentOnSingularTester> guard_mb, guard_learn;
    std::unique_ptr<CountingCiTester> count_mb, count_learn;
    CountingCiTester* mb_tester;
    CountingCiTester* learn_tester;
    if (args.oracle) {
        oracle = std::make_unique<OracleCiTester>(g);
        count_learn = std::make_unique<CountingCiTester>(*oracle);
        mb_tester = learn_tester = count_learn.get();
    } else {
        fisher_mb = std::make_unique<FisherZCiTester>(*data, alpha_mb);
        guard_mb = std::make_unique<DependentOnSingularTester>(*fisher_mb);
        count_mb = std::make_unique<CountingCiTester>(*guard_mb);
        fisher_learn = std::make_unique<FisherZCiTester>(*data, args.alpha);
        guard_learn = std::make_unique<DependentOnSingularTester>(*fisher_learn);
        count_learn = std::make_unique<CountingCiTester>(*guard_learn);
        mb_tester = count_mb.get();
        learn_tester = count_learn.get();
    }

    BenchRow row{n, p, seed, algorithm, is_diamond_free(truth), 0, 0.0, 0.0, 0.0, 0.0, 0.0, 0};
    const auto start = std::chrono::steady_clock::now();
    Skeleton learned(n);
    CiStats stats;
    if (algorithm == "rsl-auto") {
        AutoResult r = learn_skeleton_auto(*mb_tester, *learn_tester, n);
        for (const auto& s : r.attempt_stats) {
            stats.total_tests += s.total_tests;
            stats.dedup_hits += s.dedup_hits;
            stats.conditioning_size_sum += s.conditioning_size_sum;
            stats.max_conditioning_size = std::max(stats.max_conditioning_size, s.max_conditioning_size);
        }
        learned = std::move(r.result.skeleton);
    } else {
        MarkovBoundaries mbs = compute_markov_boundaries(*mb_tester, n);
        SideInfo side = SideInfo::diamond_free();
        if (algorithm == "rsl-omega")
            side = SideInfo::bounded_clique(args.m_override > 0 ? args.m_override : clique_number(g));
        LearnResult r = learn_skeleton(*learn_tester, std::move(mbs), side);
        stats = r.stats;
        learned = std::move(r.skeleton);
    }
    row.runtime_ms = elapsed_ms(start);
    row.ci_tests = stats.total_tests;
    row.asc = stats.average_conditioning_size();
    SkeletonReport report = score_skeleton(truth, learned);
    row.f1 = report.f1;
    row.precision = report.precision;
    row.recall = report.recall;
    row.shd = report.shd;
    return row;
}

int run_bench(const BenchArgs& args) {
    struct Job {
        int n;
        int rep;
        std::string algorithm;
    };
    std::vector<Job> jobs;
    for (int n : args.n_list)
        for (int rep = 0; rep < args.repetitions; ++rep)
            for (const auto& alg : args.algorithms) jobs.push_back({n, rep, alg});

    std::vector<BenchRow> rows(jobs.size());
    std::atomic<size_t> next{0};
    std::mutex error_mutex;
    std::string first_error;
    auto worker = [&] {
        for (size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1)) {
            try {
                rows[i] = run_bench_job(args, jobs[i].n, jobs[i].rep, jobs[i].algorithm);
            } catch (const std::exception& e) {
                std::lock_guard lock(error_mutex);
                if (first_error.empty()) first_error = e.what();
            }
        }
    };
    const int thread_count = std::max(1, std::min<int>(args.threads, static_cast<int>(jobs.size())));
    std::vector<std::thread> pool;
    for (int t = 0; t < thread_count - 1; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (!first_error.empty()) throw std::runtime_error(first_error);

    std::ostream* out = &std::cout;
    std::ofstream file;
    if (!args.out_path.empty()) {
        file.open(args.out_path);
        if (!file) throw parse_error("cannot open " + args.out_path + " for writing");
        out = &file;
    }
    *out << "n,p,seed,algorithm,diamond_free,ci_tests,asc,runtime_ms,f1,precision,recall,shd\n";
    for (const auto& r : rows) {
        char buf[256];
        std::snprintf(buf, sizeof buf, "%d,%.10g,%llu,%s,%d,%lld,%.10g,%.10g,%.10g,%.10g,%.10g,%d\n", r.n,
                      r.p, static_cast<unsigned long long>(r.seed), r.algorithm.c_str(),
                      r.diamond_free ? 1 : 0, r.ci_tests, r.asc, r.runtime_ms, r.f1, r.precision, r.recall,
                      r.shd);
        *out << buf;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constraint-based Bayesian network skeleton learning with structural side information"};
    app.require_subcommand(1);

    // generate
    auto* generate = app.add_subcommand("generate", "Write a random or fixture DAG as an edge-list file");
    int gen_n = 0;
    double gen_p = -1.0, gen_e = -1.0;
    uint64_t gen_seed = default_seed();
    std::string gen_fixture, gen_out;
    generate->add_option("--n", gen_n, "Vertex count");
    generate->add_option("--p", gen_p, "Edge probability");
    generate->add_option("--p-exponent", gen_e, "Edge probability as n^-e");
    generate->add_option("--seed", gen_seed, "Graph seed");
    generate->add_option("--fixture", gen_fixture, "Named fixture to copy");
    generate->add_option("--out", gen_out, "Output graph file")->required();

    // sample
    auto* sample = app.add_subcommand("sample", "Draw a linear SEM over a graph and write a CSV dataset");
    std::string sample_graph, sample_out;
    int sample_count = 0;
    uint64_t sample_seed = default_seed();
    sample->add_option("--graph", sample_graph, "Input graph file")->required();
    sample->add_option("--samples", sample_count, "Number of samples")->required()
        ->check(CLI::PositiveNumber);
    sample->add_option("--seed", sample_seed, "Model/data seed");
    sample->add_option("--out", sample_out, "Output CSV file")->required();

    // learn
    auto* learn = app.add_subcommand("learn", "Learn a skeleton and separating sets");
    LearnArgs learn_args;
    learn->add_option("--alg", learn_args.algorithm, "rsl-d | rsl-omega | rsl-auto")
        ->check(CLI::IsMember({"rsl-d", "rsl-omega", "rsl-auto"}))
        ->required();
    auto* oracle_opt = learn->add_option("--oracle", learn_args.oracle_path, "Truth graph (oracle tests)");
    auto* data_opt = learn->add_option("--data", learn_args.data_path, "CSV dataset (Fisher-Z tests)");
    oracle_opt->excludes(data_opt);
    learn->add_option("--m", learn_args.m, "Clique-number bound for rsl-omega");
    learn->add_option("--alpha", learn_args.alpha, "Significance level for learning (default 0.01)");
    learn->add_option("--alpha-mb", learn_args.alpha_mb,
                      "Significance level for boundary discovery (default 2/n^2)");
    auto* seed_opt = learn->add_option("--seed", learn_args.seed, "Tie-break seed for the removability scan");
    learn->add_option("--out", learn_args.out_path, "Output result JSON")->required();

    // evaluate
    auto* evaluate = app.add_subcommand("evaluate", "Score a result file against a truth graph");
    std::string eval_truth, eval_result, eval_out, eval_csv;
    evaluate->add_option("--truth", eval_truth, "Truth graph file")->required();
    evaluate->add_option("--result", eval_result, "Result JSON from learn")->required();
    evaluate->add_option("--out", eval_out, "Output report JSON")->required();
    evaluate->add_option("--csv", eval_csv, "Append the one-line CSV row to this file");

    // bench
    auto* bench = app.add_subcommand("bench", "Sweep random graphs and write one CSV row per run");
    BenchArgs bench_args;
    bench_args.seed_base = default_seed();
    bench->add_option("--n-list", bench_args.n_list, "Vertex counts")->required()->delimiter(',');
    bench->add_option("--p-exponent", bench_args.p_exponent, "Edge probability as n^-e (default 0.82)");
    bench->add_option("--samples", bench_args.samples, "Sample count, absolute or like 50n");
    bench->add_flag("--oracle", bench_args.oracle, "Use d-separation oracle tests");
    bench->add_option("--reps", bench_args.repetitions, "Repetitions per n")->check(CLI::PositiveNumber);
    bench->add_option("--algs", bench_args.algorithms, "Algorithms to run")->delimiter(',')
        ->check(CLI::IsMember({"rsl-d", "rsl-omega", "rsl-auto"}));
    bench->add_option("--m", bench_args.m_override, "Fixed clique bound for rsl-omega (default: exact)");
    bench->add_option("--alpha", bench_args.alpha, "Significance level for learning");
    bench->add_option("--alpha-mb", bench_args.alpha_mb, "Significance level for boundary discovery");
    bench->add_option("--seed-base", bench_args.seed_base, "Seed for repetition 0");
    bench->add_option("--threads", bench_args.threads, "Worker threads")->check(CLI::PositiveNumber);
    bench->add_option("--out", bench_args.out_path, "Output CSV (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*generate) {
            NamedDag g{Dag(0), {}};
            if (!gen_fixture.empty()) {
                if (!has_fixture(gen_fixture)) {
                    std::cerr << "unknown fixture '" << gen_fixture << "'\n";
                    return kExitBadFile;
                }
                g.dag = fixture_dag(gen_fixture);
            } else {
                if (gen_n <= 0) throw CLI::ValidationError("--n", "required without --fixture");
                double p = gen_p;
                if (gen_e > 0) p = std::pow(static_cast<double>(gen_n), -gen_e);
                if (p < 0 || p > 1) throw CLI::ValidationError("--p", "need --p in [0,1] or --p-exponent");
                g.dag = erdos_renyi_dag(gen_n, p, derive_seed(gen_seed, SeedStream::Graph));
            }
            g.names = default_names(g.dag.vertex_count());
            write_graph_file(gen_out, g);
            return 0;
        }
        if (*sample) {
            NamedDag g = read_graph_file(sample_graph);
            SemModel model = draw_sem(g.dag, derive_seed(sample_seed, SeedStream::Model));
            GaussianDataset data =
                sample_sem(model, sample_count, derive_seed(sample_seed, SeedStream::Data));
            write_dataset_csv_file(sample_out, data, g.names);
            return 0;
        }
        if (*learn) {
            if (learn_args.oracle_path.empty() && learn_args.data_path.empty())
                throw CLI::ValidationError("--oracle/--data", "one input is required");
            if (learn_args.algorithm == "rsl-omega" && learn_args.m < 1)
                throw CLI::ValidationError("--m", "rsl-omega needs a clique bound >= 1");
            learn_args.seed_given = seed_opt->count() > 0;
            if (!learn_args.seed_given && std::getenv("RSLBN_SEED")) {
                learn_args.seed = default_seed();
                learn_args.seed_given = true;
            }
            LearnOutcome outcome = run_learn(learn_args);
            write_learn_record_file(learn_args.out_path, outcome.record);
            return 0;
        }
        if (*evaluate) {
            NamedDag truth = read_graph_file(eval_truth);
            LearnRunRecord record = read_learn_record_file(eval_result);
            if (record.n != truth.dag.vertex_count())
                throw parse_error("result has " + std::to_string(record.n) + " vertices, truth has " +
                                  std::to_string(truth.dag.vertex_count()));
            Skeleton learned(record.n);
            for (auto [u, v] : record.edges) learned.add_edge(u, v);
            SepSetMap sepsets;
            for (auto& e : record.sepsets) sepsets.set(e.x, e.y, e.s);
            EvaluationRecord report{score_skeleton(skeleton_of(truth.dag), learned),
                                    score_sepsets(truth.dag, sepsets)};
            std::ofstream out(eval_out);
            if (!out) throw parse_error("cannot open " + eval_out + " for writing");
            out << to_json(report) << "\n";
            std::string row = to_csv_row(report);
            if (!eval_csv.empty()) {
                std::ofstream csv(eval_csv, std::ios::app);
                if (!csv) throw parse_error("cannot open " + eval_csv + " for writing");
                csv << row << "\n";
            }
            std::cout << row << "\n";
            return 0;
        }
        if (*bench) {
            if (!bench_args.oracle && bench_args.samples.empty())
                throw CLI::ValidationError("--oracle/--samples", "pick oracle tests or a sample count");
            return run_bench(bench_args);
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const unknown_vertex_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnknownVertex;
    } catch (const invalid_vertex_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnknownVertex;
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadFile;
    } catch (const no_removable_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitLearnFailed;
    } catch (const auto_exhausted_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitLearnFailed;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
