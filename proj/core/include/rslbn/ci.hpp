#pragma once

#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "rslbn/graph.hpp"

namespace rslbn {

/// A single conditional-independence query x ⊥ y | s. Symmetric in x, y;
/// canonical form has x < y and s sorted.
struct CiQuery {
    int x;
    int y;
    std::vector<int> s;

    CiQuery canonical() const;
};

/// Per-run accounting of performed tests.
struct CiStats {
    long long total_tests = 0;
    long long dedup_hits = 0;
    long long conditioning_size_sum = 0;
    int max_conditioning_size = 0;

    /// ASC: mean conditioning-set size over performed tests.
    double average_conditioning_size() const {
        return total_tests > 0 ? static_cast<double>(conditioning_size_sum) / static_cast<double>(total_tests)
                               : 0.0;
    }

    void record(int conditioning_size) {
        ++total_tests;
        conditioning_size_sum += conditioning_size;
        max_conditioning_size = std::max(max_conditioning_size, conditioning_size);
    }
};

/// Interface every conditional-independence backend implements.
/// Returns true when x and y are judged independent given s.
class CiTester {
public:
    virtual ~CiTester() = default;
    virtual bool independent(int x, int y, std::span<const int> s) = 0;
    virtual int variable_count() const = 0;

    bool independent(const CiQuery& q) { return independent(q.x, q.y, q.s); }
};

/// Population-level tests through d-separation on the true DAG.
class OracleCiTester final : public CiTester {
public:
    explicit OracleCiTester(const Dag& g) : g_(&g) {}
    bool independent(int x, int y, std::span<const int> s) override { return d_separated(*g_, x, y, s); }
    int variable_count() const override { return g_->vertex_count(); }

private:
    const Dag* g_;
};

/// Samples of jointly Gaussian variables with a precomputed correlation
/// matrix. Column-major: value(i, j) = values[j * n_samples + i].
class GaussianDataset {
public:
    GaussianDataset(int n_vars, int n_samples, std::vector<double> column_major_values);

    int variable_count() const { return n_vars_; }
    int sample_count() const { return n_samples_; }
    double value(int row, int col) const { return values_[static_cast<size_t>(col) * n_samples_ + row]; }
    const std::vector<double>& values() const { return values_; }
    double correlation(int i, int j) const { return corr_[static_cast<size_t>(i) * n_vars_ + j]; }
    const std::vector<double>& correlation_matrix() const { return corr_; }

private:
    int n_vars_;
    int n_samples_;
    std::vector<double> values_;
    std::vector<double> corr_;
};

/// Inverse standard-normal CDF.
double normal_quantile(double p);

/// Sample partial correlation of (x, y) given s, from the dataset's
/// correlation matrix via an LDLT solve of the (|s|+2)-dimensional
/// submatrix. Throws singular_submatrix_error when the reciprocal
/// condition estimate falls below 1e-12.
double partial_correlation(const GaussianDataset& d, int x, int y, std::span<const int> s);

/// Fisher-Z conditional-independence decision: independent iff
/// sqrt(n - |s| - 3) * |atanh(rho)| <= Phi^{-1}(1 - alpha/2).
/// Throws insufficient_samples_error when |s| > n_samples - 3 and
/// singular_submatrix_error on numerically singular submatrices.
bool fisher_z_independent(const GaussianDataset& d, const CiQuery& q, double alpha);

class FisherZCiTester final : public CiTester {
public:
    FisherZCiTester(const GaussianDataset& d, double alpha) : data_(&d), alpha_(alpha) {}
    bool independent(int x, int y, std::span<const int> s) override;
    int variable_count() const override { return data_->variable_count(); }

private:
    const GaussianDataset* data_;
    double alpha_;
    // Precision matrix, computed on first total-conditioning query; every
    // ComputeMb test conditions on all remaining variables, so this turns
    // n^3-per-query into n^3-once.
    std::vector<double> global_precision_;
    bool global_precision_ready_ = false;
    bool global_precision_singular_ = false;
};

/// Treats singular-submatrix failures as "dependent"; keeps edges.
class DependentOnSingularTester final : public CiTester {
public:
    explicit DependentOnSingularTester(CiTester& inner) : inner_(&inner) {}
    bool independent(int x, int y, std::span<const int> s) override;
    int variable_count() const override { return inner_->variable_count(); }

private:
    CiTester* inner_;
};

/// Counts and deduplicates queries. Repeated canonical queries return the
/// cached answer and count as dedup hits, not tests. Single-run state; each
/// learner run owns its own instance. Phase stats cover the queries since
/// the last reset_phase(); the cache always persists.
class CountingCiTester final : public CiTester {
public:
    explicit CountingCiTester(CiTester& inner) : inner_(&inner) {}

    bool independent(int x, int y, std::span<const int> s) override;
    int variable_count() const override { return inner_->variable_count(); }

    const CiStats& stats() const { return stats_; }
    const CiStats& phase_stats() const { return phase_stats_; }
    void reset_phase() { phase_stats_ = CiStats{}; }

private:
    struct KeyHash {
        size_t operator()(const std::vector<int>& k) const {
            size_t h = 1469598103934665603ull;
            for (int v : k) {
                h ^= static_cast<size_t>(v) + 0x9e3779b97f4a7c15ull;
                h *= 1099511628211ull;
            }
            return h;
        }
    };

    CiTester* inner_;
    CiStats stats_;
    CiStats phase_stats_;
    std::unordered_map<std::vector<int>, bool, KeyHash> cache_;
};

}  // namespace rslbn
