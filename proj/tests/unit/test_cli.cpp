#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rslbn/io.hpp"

using namespace rslbn;
namespace fs = std::filesystem;

namespace {

const char* cli_path() { return RSLBN_CLI_PATH; }

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("rslbn_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
    const std::string cmd = std::string(cli_path()) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace

TEST_CASE("cli learns the chain fixture in oracle mode") {
    TempDir dir;
    REQUIRE(run_cli("generate --fixture chain3 --out " + dir.file("chain3.graph")) == 0);
    REQUIRE(run_cli("learn --alg rsl-d --oracle " + dir.file("chain3.graph") + " --out " +
                    dir.file("result.json")) == 0);
    const LearnRunRecord record = read_learn_record_file(dir.file("result.json"));
    CHECK(record.algorithm == "rsl-d");
    CHECK(record.mode == "oracle");
    CHECK(record.edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
    CHECK(record.sepsets.size() == 1);
    CHECK(record.mb_stats.total_tests == 3);
    CHECK_FALSE(record.fallback_used);
}

TEST_CASE("cli pipeline: generate, sample, learn, evaluate") {
    TempDir dir;
    const std::string graph = dir.file("g.graph");
    const std::string data = dir.file("d.csv");
    const std::string result = dir.file("r.json");
    const std::string report = dir.file("report.json");
    REQUIRE(run_cli("generate --n 12 --p-exponent 0.82 --seed 5 --out " + graph) == 0);
    REQUIRE(run_cli("sample --graph " + graph + " --samples 2000 --seed 5 --out " + data) == 0);
    REQUIRE(run_cli("learn --alg rsl-d --data " + data + " --out " + result) == 0);
    REQUIRE(run_cli("evaluate --truth " + graph + " --result " + result + " --out " + report) == 0);
    const std::string text = slurp(report);
    CHECK(text.find("\"f1\"") != std::string::npos);
    CHECK(text.find("\"alss\"") != std::string::npos);

    // Oracle mode on the same graph recovers it exactly.
    const std::string oracle_result = dir.file("oracle.json");
    const std::string oracle_report = dir.file("oracle_report.json");
    REQUIRE(run_cli("learn --alg rsl-auto --oracle " + graph + " --out " + oracle_result) == 0);
    REQUIRE(run_cli("evaluate --truth " + graph + " --result " + oracle_result + " --out " +
                    oracle_report) == 0);
    const std::string oracle_text = slurp(oracle_report);
    CHECK(oracle_text.find("\"shd\": 0") != std::string::npos);
    const LearnRunRecord record = read_learn_record_file(oracle_result);
    REQUIRE(record.m_used.has_value());
    CHECK(*record.m_used >= 1);
}

TEST_CASE("cli learn results are deterministic modulo wall time") {
    TempDir dir;
    const std::string graph = dir.file("g.graph");
    REQUIRE(run_cli("generate --n 15 --p 0.15 --seed 9 --out " + graph) == 0);
    REQUIRE(run_cli("learn --alg rsl-omega --m 3 --oracle " + graph + " --seed 4 --out " +
                    dir.file("a.json")) == 0);
    REQUIRE(run_cli("learn --alg rsl-omega --m 3 --oracle " + graph + " --seed 4 --out " +
                    dir.file("b.json")) == 0);
    LearnRunRecord a = read_learn_record_file(dir.file("a.json"));
    LearnRunRecord b = read_learn_record_file(dir.file("b.json"));
    a.wall_time_ms = b.wall_time_ms = 0.0;
    CHECK(to_json(a) == to_json(b));
}

TEST_CASE("cli bench emits the documented columns") {
    TempDir dir;
    const std::string csv = dir.file("bench.csv");
    REQUIRE(run_cli("bench --n-list 10,12 --p-exponent 0.82 --reps 2 --oracle "
                    "--algs rsl-d,rsl-omega --seed-base 3 --threads 2 --out " +
                    csv) == 0);
    std::ifstream in(csv);
    std::string header;
    REQUIRE(std::getline(in, header));
    CHECK(header == "n,p,seed,algorithm,diamond_free,ci_tests,asc,runtime_ms,f1,precision,recall,shd");
    int rows = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        ++rows;
        // n,p,seed,alg,diamond_free,ci_tests,asc,runtime,f1,...
        std::istringstream fields(line);
        std::string field;
        std::vector<std::string> parts;
        while (std::getline(fields, field, ',')) parts.push_back(field);
        REQUIRE(parts.size() == 12);
        const bool diamond_free = parts[4] == "1";
        const double f1 = std::stod(parts[8]);
        // Oracle runs: rsl-omega uses the exact clique number, so every row
        // is perfect; rsl-d is perfect on the diamond-free rows.
        if (parts[3] == "rsl-omega") CHECK(f1 == 1.0);
        if (parts[3] == "rsl-d" && diamond_free) CHECK(f1 == 1.0);
    }
    CHECK(rows == 2 * 2 * 2);
}

TEST_CASE("cli runs the finite-sample pipeline on the benchmark fixture") {
    TempDir dir;
    const std::string graph = dir.file("diabetes.graph");
    const std::string data = dir.file("diabetes.csv");
    const std::string result = dir.file("result.json");
    const std::string report = dir.file("report.json");
    REQUIRE(run_cli("generate --fixture diabetes --out " + graph) == 0);
    REQUIRE(run_cli("sample --graph " + graph + " --samples 10000 --seed 0 --out " + data) == 0);
    REQUIRE(run_cli("learn --alg rsl-d --data " + data + " --out " + result) == 0);
    REQUIRE(run_cli("evaluate --truth " + graph + " --result " + result + " --out " + report) == 0);
    const std::string text = slurp(report);
    const auto f1_pos = text.find("\"f1\": ");
    REQUIRE(f1_pos != std::string::npos);
    const double f1 = std::stod(text.substr(f1_pos + 6));
    CHECK(f1 >= 0.90);
    const LearnRunRecord record = read_learn_record_file(result);
    CHECK(record.mb_stats.total_tests == 104 * 103 / 2);
    CHECK(record.alpha_mb == doctest::Approx(2.0 / (104.0 * 104.0)));
}

TEST_CASE("cli picks up the default seed from the environment") {
    TempDir dir;
    const std::string cmd = std::string("RSLBN_SEED=11 ") + cli_path() + " generate --n 8 --p 0.4 --out " +
                            dir.file("a.graph") + " >/dev/null 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    REQUIRE(run_cli("generate --n 8 --p 0.4 --seed 11 --out " + dir.file("b.graph")) == 0);
    CHECK(slurp(dir.file("a.graph")) == slurp(dir.file("b.graph")));
}

TEST_CASE("cli bench accepts multiplier sample counts") {
    TempDir dir;
    const std::string csv = dir.file("bench.csv");
    REQUIRE(run_cli("bench --n-list 12 --p-exponent 0.82 --reps 2 --samples 20n "
                    "--algs rsl-d --seed-base 7 --out " + csv) == 0);
    std::ifstream in(csv);
    std::string line;
    int rows = -1;  // header
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 2);
    CHECK(run_cli("bench --n-list 12 --reps 1 --samples nonsense --algs rsl-d") != 0);
}

TEST_CASE("cli distinguishes failure kinds by exit code") {
    TempDir dir;
    {
        std::ofstream bad(dir.file("bad.graph"));
        bad << "nonsense\n";
    }
    CHECK(run_cli("learn --alg rsl-d --oracle " + dir.file("bad.graph") + " --out " +
                  dir.file("r.json")) == 2);
    {
        std::ofstream named(dir.file("named.graph"));
        named << "n 2\nalpha beta\n";
    }
    CHECK(run_cli("learn --alg rsl-d --oracle " + dir.file("named.graph") + " --out " +
                  dir.file("r.json")) == 3);
    CHECK(run_cli("generate --fixture nope --out " + dir.file("x.graph")) == 2);
    CHECK(run_cli("learn --alg rsl-omega --oracle missing.graph --out r.json") != 0);  // missing --m
    CHECK(run_cli("sample --graph does_not_exist.graph --samples 10 --out " + dir.file("d.csv")) == 2);
}
