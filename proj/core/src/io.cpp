#include "rslbn/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace rslbn {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
    size_t pos = line.find('#');
    return trim(pos == std::string::npos ? line : line.substr(0, pos));
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    return in;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot open " + path + " for writing");
    return out;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

NamedDag read_graph(std::istream& in) {
    std::string line;
    int n = -1;
    std::vector<std::string> names;
    std::unordered_map<std::string, int> name_to_index;
    std::vector<std::pair<int, int>> edges;
    int line_no = 0;

    auto resolve = [&](const std::string& token, int current_line) {
        try {
            size_t used = 0;
            int v = std::stoi(token, &used);
            if (used == token.size()) return v;
        } catch (const std::exception&) {
        }
        auto it = name_to_index.find(token);
        if (it == name_to_index.end())
            throw unknown_vertex_error("line " + std::to_string(current_line) + ": unknown vertex name '" +
                                       token + "'");
        return it->second;
    };

    while (std::getline(in, line)) {
        ++line_no;
        std::string body = strip_comment(line);
        if (body.empty()) continue;
        std::istringstream fields(body);
        std::string head;
        fields >> head;
        if (n < 0) {
            int count;
            if (head != "n" || !(fields >> count) || count < 0)
                throw parse_error("line " + std::to_string(line_no) + ": expected 'n <count>'");
            n = count;
            names.resize(n);
            for (int i = 0; i < n; ++i) names[i] = "X" + std::to_string(i);
            continue;
        }
        if (head == "name") {
            int idx;
            std::string value;
            if (!(fields >> idx) || !(fields >> value))
                throw parse_error("line " + std::to_string(line_no) + ": expected 'name <index> <string>'");
            if (idx < 0 || idx >= n)
                throw unknown_vertex_error("line " + std::to_string(line_no) + ": name index out of range");
            names[idx] = value;
            name_to_index[value] = idx;
            continue;
        }
        std::string second;
        if (!(fields >> second))
            throw parse_error("line " + std::to_string(line_no) + ": expected '<u> <v>'");
        int u = resolve(head, line_no);
        int v = resolve(second, line_no);
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw unknown_vertex_error("line " + std::to_string(line_no) + ": vertex index out of range");
        edges.emplace_back(u, v);
    }
    if (n < 0) throw parse_error("missing 'n <count>' header");
    try {
        return NamedDag{Dag::from_edges(n, edges), std::move(names)};
    } catch (const invalid_vertex_error& e) {
        throw parse_error(e.what());
    }
}

NamedDag read_graph_file(const std::string& path) {
    auto in = open_input(path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const NamedDag& g) {
    out << "n " << g.dag.vertex_count() << "\n";
    for (int i = 0; i < static_cast<int>(g.names.size()); ++i) {
        if (g.names[i] != "X" + std::to_string(i)) out << "name " << i << " " << g.names[i] << "\n";
    }
    for (auto [u, v] : g.dag.edges()) out << u << " " << v << "\n";
}

void write_graph_file(const std::string& path, const NamedDag& g) {
    auto out = open_output(path);
    write_graph(out, g);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void write_dataset_csv(std::ostream& out, const GaussianDataset& data,
                       const std::vector<std::string>& names) {
    const int n = data.variable_count();
    if (static_cast<int>(names.size()) != n) throw std::invalid_argument("name count mismatch");
    for (int j = 0; j < n; ++j) out << (j ? "," : "") << csv_escape(names[j]);
    out << "\n";
    for (int i = 0; i < data.sample_count(); ++i) {
        for (int j = 0; j < n; ++j) out << (j ? "," : "") << format_double(data.value(i, j));
        out << "\n";
    }
}

void write_dataset_csv_file(const std::string& path, const GaussianDataset& data,
                            const std::vector<std::string>& names) {
    auto out = open_output(path);
    write_dataset_csv(out, data, names);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line, int line_no) {
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (in_quotes) throw parse_error("line " + std::to_string(line_no) + ": unterminated quote");
    fields.push_back(cur);
    return fields;
}

}  // namespace

NamedDataset read_dataset_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw parse_error("empty dataset");
    int line_no = 1;
    std::vector<std::string> names = split_csv_line(line, line_no);
    const int n = static_cast<int>(names.size());
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto fields = split_csv_line(line, line_no);
        if (static_cast<int>(fields.size()) != n)
            throw parse_error("line " + std::to_string(line_no) + ": expected " + std::to_string(n) +
                              " fields");
        std::vector<double> row(n);
        for (int j = 0; j < n; ++j) {
            try {
                size_t used = 0;
                row[j] = std::stod(fields[j], &used);
                if (used != fields[j].size()) throw std::invalid_argument(fields[j]);
            } catch (const std::exception&) {
                throw parse_error("line " + std::to_string(line_no) + ": bad number '" + fields[j] + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw parse_error("dataset has no sample rows");
    const int n_samples = static_cast<int>(rows.size());
    std::vector<double> values(static_cast<size_t>(n) * n_samples);
    for (int i = 0; i < n_samples; ++i)
        for (int j = 0; j < n; ++j) values[static_cast<size_t>(j) * n_samples + i] = rows[i][j];
    return NamedDataset{GaussianDataset(n, n_samples, std::move(values)), std::move(names)};
}

NamedDataset read_dataset_csv_file(const std::string& path) {
    auto in = open_input(path);
    return read_dataset_csv(in);
}

namespace {

nlohmann::json stats_to_json(const CiStats& stats) {
    return nlohmann::json{{"total_tests", stats.total_tests},
                          {"dedup_hits", stats.dedup_hits},
                          {"conditioning_size_sum", stats.conditioning_size_sum},
                          {"max_conditioning_size", stats.max_conditioning_size},
                          {"asc", stats.average_conditioning_size()}};
}

CiStats stats_from_json(const nlohmann::json& j) {
    CiStats s;
    s.total_tests = j.at("total_tests").get<long long>();
    s.dedup_hits = j.at("dedup_hits").get<long long>();
    s.conditioning_size_sum = j.at("conditioning_size_sum").get<long long>();
    s.max_conditioning_size = j.at("max_conditioning_size").get<int>();
    return s;
}

}  // namespace

std::string to_json(const LearnRunRecord& record) {
    nlohmann::json j;
    j["schema"] = record.schema;
    j["algorithm"] = record.algorithm;
    j["mode"] = record.mode;
    j["n"] = record.n;
    j["seed"] = record.seed;
    j["alpha"] = record.alpha;
    j["alpha_mb"] = record.alpha_mb;
    if (record.m) j["m"] = *record.m;
    if (record.m_used) j["m_used"] = *record.m_used;
    j["edges"] = nlohmann::json::array();
    for (auto [u, v] : record.edges) j["edges"].push_back({u, v});
    j["sepsets"] = nlohmann::json::array();
    for (const auto& e : record.sepsets) j["sepsets"].push_back({{"x", e.x}, {"y", e.y}, {"s", e.s}});
    j["removal_order"] = record.removal_order;
    j["fallback_used"] = record.fallback_used;
    j["stats"] = stats_to_json(record.stats);
    j["mb_stats"] = stats_to_json(record.mb_stats);
    j["wall_time_ms"] = record.wall_time_ms;
    return j.dump(2);
}

LearnRunRecord learn_record_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad result JSON: ") + e.what());
    }
    try {
        LearnRunRecord r;
        r.schema = j.at("schema").get<int>();
        if (r.schema != 1) throw parse_error("unsupported result schema " + std::to_string(r.schema));
        r.algorithm = j.at("algorithm").get<std::string>();
        r.mode = j.at("mode").get<std::string>();
        r.n = j.at("n").get<int>();
        r.seed = j.at("seed").get<uint64_t>();
        r.alpha = j.at("alpha").get<double>();
        r.alpha_mb = j.at("alpha_mb").get<double>();
        if (j.contains("m")) r.m = j["m"].get<int>();
        if (j.contains("m_used")) r.m_used = j["m_used"].get<int>();
        for (const auto& e : j.at("edges")) r.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        for (const auto& e : j.at("sepsets"))
            r.sepsets.push_back(SepSetMap::Entry{e.at("x").get<int>(), e.at("y").get<int>(),
                                                 e.at("s").get<std::vector<int>>()});
        r.removal_order = j.at("removal_order").get<std::vector<int>>();
        r.fallback_used = j.at("fallback_used").get<bool>();
        r.stats = stats_from_json(j.at("stats"));
        r.mb_stats = stats_from_json(j.at("mb_stats"));
        r.wall_time_ms = j.at("wall_time_ms").get<double>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("bad result JSON: ") + e.what());
    }
}

void write_learn_record_file(const std::string& path, const LearnRunRecord& record) {
    auto out = open_output(path);
    out << to_json(record) << "\n";
}

LearnRunRecord read_learn_record_file(const std::string& path) {
    auto in = open_input(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return learn_record_from_json(buf.str());
}

std::string to_json(const EvaluationRecord& record) {
    nlohmann::json j;
    j["f1"] = record.skeleton.f1;
    j["precision"] = record.skeleton.precision;
    j["recall"] = record.skeleton.recall;
    j["shd"] = record.skeleton.shd;
    j["extra_edges"] = record.skeleton.extra_edges;
    j["missing_edges"] = record.skeleton.missing_edges;
    j["sepsets_total"] = record.sepsets.total;
    j["sepsets_mistakes"] = record.sepsets.mistakes;
    j["alss"] = record.sepsets.accuracy();
    return j.dump(2);
}

std::string to_csv_row(const EvaluationRecord& record) {
    std::ostringstream out;
    out << format_double(record.skeleton.f1) << "," << format_double(record.skeleton.precision) << ","
        << format_double(record.skeleton.recall) << "," << record.skeleton.shd << ","
        << record.skeleton.extra_edges << "," << record.skeleton.missing_edges << ","
        << record.sepsets.total << "," << record.sepsets.mistakes << ","
        << format_double(record.sepsets.accuracy());
    return out.str();
}

}  // namespace rslbn
