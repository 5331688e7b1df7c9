#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rslbn/ci.hpp"
#include "rslbn/eval.hpp"
#include "rslbn/graph.hpp"
#include "rslbn/rsl.hpp"

namespace rslbn {

/// A DAG plus optional vertex names (X<i> when undeclared).
struct NamedDag {
    Dag dag;
    std::vector<std::string> names;
};

/// Graph file format, line oriented; text after '#' is ignored:
///   n <count>
///   name <index> <string>     (optional)
///   <u> <v>                   (directed edge u -> v; names accepted)
NamedDag read_graph(std::istream& in);
NamedDag read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const NamedDag& g);
void write_graph_file(const std::string& path, const NamedDag& g);

/// CSV with a header row of variable names, one sample per row.
void write_dataset_csv(std::ostream& out, const GaussianDataset& data,
                       const std::vector<std::string>& names);
void write_dataset_csv_file(const std::string& path, const GaussianDataset& data,
                            const std::vector<std::string>& names);

struct NamedDataset {
    GaussianDataset data;
    std::vector<std::string> names;
};
NamedDataset read_dataset_csv(std::istream& in);
NamedDataset read_dataset_csv_file(const std::string& path);

/// One learner invocation, as serialized to / from result JSON (schema 1).
struct LearnRunRecord {
    int schema = 1;
    std::string algorithm;  // rsl-d | rsl-omega | rsl-auto
    std::string mode;       // oracle | data
    int n = 0;
    uint64_t seed = 0;
    double alpha = 0.0;
    double alpha_mb = 0.0;
    std::optional<int> m;       // rsl-omega input bound
    std::optional<int> m_used;  // rsl-auto verified bound
    std::vector<std::pair<int, int>> edges;
    std::vector<SepSetMap::Entry> sepsets;
    std::vector<int> removal_order;
    bool fallback_used = false;
    CiStats stats;     // learning phase
    CiStats mb_stats;  // boundary-discovery phase
    double wall_time_ms = 0.0;
};

std::string to_json(const LearnRunRecord& record);
LearnRunRecord learn_record_from_json(const std::string& text);
void write_learn_record_file(const std::string& path, const LearnRunRecord& record);
LearnRunRecord read_learn_record_file(const std::string& path);

/// Evaluation outputs: skeleton metrics plus separating-set accuracy.
struct EvaluationRecord {
    SkeletonReport skeleton;
    SepSetScore sepsets;
};

std::string to_json(const EvaluationRecord& record);
/// f1,precision,recall,shd,extra,missing,sepsets_total,sepsets_mistakes,alss
std::string to_csv_row(const EvaluationRecord& record);

std::string csv_escape(const std::string& field);

}  // namespace rslbn
