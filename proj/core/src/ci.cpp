#include "rslbn/ci.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace rslbn {

namespace {

constexpr double kRcondTolerance = 1e-12;
constexpr double kRhoClamp = 1e-12;

void validate_query(int n, int x, int y, std::span<const int> s) {
    auto check = [n](int v) {
        if (v < 0 || v >= n) throw invalid_vertex_error("query vertex out of range: " + std::to_string(v));
    };
    check(x);
    check(y);
    if (x == y) throw invalid_vertex_error("query with x == y");
    for (int v : s) {
        check(v);
        if (v == x || v == y) throw invalid_vertex_error("conditioning set contains an endpoint");
    }
}

// LDLT factorization in place; a is k x k row-major symmetric. Returns false
// when the pivot-ratio condition estimate drops below kRcondTolerance.
bool ldlt_factor(std::vector<double>& a, int k) {
    double max_pivot = 0.0;
    for (int j = 0; j < k; ++j) {
        double d = a[j * k + j];
        for (int r = 0; r < j; ++r) {
            double l = a[j * k + r];
            d -= l * l * a[r * k + r];
        }
        max_pivot = std::max(max_pivot, std::abs(d));
        if (std::abs(d) <= kRcondTolerance * std::max(max_pivot, 1.0)) return false;
        a[j * k + j] = d;
        for (int i = j + 1; i < k; ++i) {
            double v = a[i * k + j];
            for (int r = 0; r < j; ++r) v -= a[i * k + r] * a[j * k + r] * a[r * k + r];
            a[i * k + j] = v / d;
        }
    }
    return true;
}

// Solves L D L^T x = b with the factorization produced above.
void ldlt_solve(const std::vector<double>& f, int k, std::vector<double>& b) {
    for (int i = 0; i < k; ++i)
        for (int r = 0; r < i; ++r) b[i] -= f[i * k + r] * b[r];
    for (int i = 0; i < k; ++i) b[i] /= f[i * k + i];
    for (int i = k - 1; i >= 0; --i)
        for (int r = i + 1; r < k; ++r) b[i] -= f[r * k + i] * b[r];
}

}  // namespace

CiQuery CiQuery::canonical() const {
    CiQuery q{std::min(x, y), std::max(x, y), s};
    std::sort(q.s.begin(), q.s.end());
    return q;
}

GaussianDataset::GaussianDataset(int n_vars, int n_samples, std::vector<double> column_major_values)
    : n_vars_(n_vars), n_samples_(n_samples), values_(std::move(column_major_values)) {
    if (n_vars < 0 || n_samples < 1 || values_.size() != static_cast<size_t>(n_vars) * n_samples)
        throw std::invalid_argument("dataset shape mismatch");
    std::vector<double> mean(n_vars, 0.0);
    for (int j = 0; j < n_vars; ++j) {
        const double* col = values_.data() + static_cast<size_t>(j) * n_samples;
        double m = 0.0;
        for (int i = 0; i < n_samples; ++i) m += col[i];
        mean[j] = m / n_samples;
    }
    std::vector<double> cov(static_cast<size_t>(n_vars) * n_vars, 0.0);
    for (int a = 0; a < n_vars; ++a) {
        const double* ca = values_.data() + static_cast<size_t>(a) * n_samples;
        for (int b = a; b < n_vars; ++b) {
            const double* cb = values_.data() + static_cast<size_t>(b) * n_samples;
            double acc = 0.0;
            for (int i = 0; i < n_samples; ++i) acc += (ca[i] - mean[a]) * (cb[i] - mean[b]);
            cov[static_cast<size_t>(a) * n_vars + b] = acc;
            cov[static_cast<size_t>(b) * n_vars + a] = acc;
        }
    }
    corr_.assign(static_cast<size_t>(n_vars) * n_vars, 0.0);
    for (int a = 0; a < n_vars; ++a) {
        for (int b = 0; b < n_vars; ++b) {
            double den = std::sqrt(cov[static_cast<size_t>(a) * n_vars + a] *
                                   cov[static_cast<size_t>(b) * n_vars + b]);
            corr_[static_cast<size_t>(a) * n_vars + b] =
                a == b ? 1.0 : (den > 0.0 ? cov[static_cast<size_t>(a) * n_vars + b] / den : 0.0);
        }
    }
}

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile requires p in (0,1)");
    // Acklam's rational approximation, then one Halley refinement.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,  -2.759285104469687e+02,
                               1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                               6.680131188771972e+01, -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                               -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                               3.754408661907416e+00};
    const double plow = 0.02425, phigh = 1 - plow;
    double x;
    if (p < plow) {
        double q = std::sqrt(-2 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    } else if (p <= phigh) {
        double q = p - 0.5, r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
    } else {
        double q = std::sqrt(-2 * std::log(1 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
    }
    double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    double u = e * std::sqrt(2 * M_PI) * std::exp(x * x / 2);
    return x - u / (1 + x * u / 2);
}

double partial_correlation(const GaussianDataset& d, int x, int y, std::span<const int> s) {
    validate_query(d.variable_count(), x, y, s);
    const int k = static_cast<int>(s.size()) + 2;
    std::vector<int> idx;
    idx.reserve(k);
    idx.push_back(x);
    idx.push_back(y);
    idx.insert(idx.end(), s.begin(), s.end());
    std::vector<double> m(static_cast<size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) m[static_cast<size_t>(i) * k + j] = d.correlation(idx[i], idx[j]);
    if (!ldlt_factor(m, k)) throw singular_submatrix_error("near-singular correlation submatrix");
    // Precision entries from two unit solves: rho = -P01 / sqrt(P00 * P11).
    std::vector<double> e0(k, 0.0), e1(k, 0.0);
    e0[0] = 1.0;
    e1[1] = 1.0;
    ldlt_solve(m, k, e0);
    ldlt_solve(m, k, e1);
    double p00 = e0[0], p01 = e0[1], p11 = e1[1];
    if (p00 <= 0.0 || p11 <= 0.0) throw singular_submatrix_error("non-positive precision diagonal");
    return -p01 / std::sqrt(p00 * p11);
}

bool fisher_z_independent(const GaussianDataset& d, const CiQuery& q, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0,1)");
    if (static_cast<int>(q.s.size()) > d.sample_count() - 3)
        throw insufficient_samples_error("need |s| <= n_samples - 3");
    double rho = partial_correlation(d, q.x, q.y, q.s);
    rho = std::clamp(rho, -1.0 + kRhoClamp, 1.0 - kRhoClamp);
    double z = 0.5 * std::log((1.0 + rho) / (1.0 - rho));
    double dof = static_cast<double>(d.sample_count() - static_cast<int>(q.s.size()) - 3);
    return std::sqrt(dof) * std::abs(z) <= normal_quantile(1.0 - alpha / 2.0);
}

bool FisherZCiTester::independent(int x, int y, std::span<const int> s) {
    const int n = data_->variable_count();
    validate_query(n, x, y, s);
    if (static_cast<int>(s.size()) > data_->sample_count() - 3)
        throw insufficient_samples_error("need |s| <= n_samples - 3");
    double rho;
    if (static_cast<int>(s.size()) == n - 2) {
        if (!global_precision_ready_) {
            global_precision_ready_ = true;
            std::vector<double> f = data_->correlation_matrix();
            if (!ldlt_factor(f, n)) {
                global_precision_singular_ = true;
            } else {
                global_precision_.assign(static_cast<size_t>(n) * n, 0.0);
                std::vector<double> col(n);
                for (int j = 0; j < n; ++j) {
                    std::fill(col.begin(), col.end(), 0.0);
                    col[j] = 1.0;
                    ldlt_solve(f, n, col);
                    for (int i = 0; i < n; ++i) global_precision_[static_cast<size_t>(i) * n + j] = col[i];
                }
            }
        }
        if (global_precision_singular_)
            throw singular_submatrix_error("near-singular correlation matrix");
        double p00 = global_precision_[static_cast<size_t>(x) * n + x];
        double p11 = global_precision_[static_cast<size_t>(y) * n + y];
        double p01 = global_precision_[static_cast<size_t>(x) * n + y];
        if (p00 <= 0.0 || p11 <= 0.0) throw singular_submatrix_error("non-positive precision diagonal");
        rho = -p01 / std::sqrt(p00 * p11);
    } else {
        rho = partial_correlation(*data_, x, y, s);
    }
    rho = std::clamp(rho, -1.0 + kRhoClamp, 1.0 - kRhoClamp);
    double z = 0.5 * std::log((1.0 + rho) / (1.0 - rho));
    double dof = static_cast<double>(data_->sample_count() - static_cast<int>(s.size()) - 3);
    return std::sqrt(dof) * std::abs(z) <= normal_quantile(1.0 - alpha_ / 2.0);
}

bool DependentOnSingularTester::independent(int x, int y, std::span<const int> s) {
    try {
        return inner_->independent(x, y, s);
    } catch (const singular_submatrix_error&) {
        return false;
    }
}

bool CountingCiTester::independent(int x, int y, std::span<const int> s) {
    std::vector<int> key;
    key.reserve(s.size() + 2);
    key.push_back(std::min(x, y));
    key.push_back(std::max(x, y));
    key.insert(key.end(), s.begin(), s.end());
    std::sort(key.begin() + 2, key.end());
    if (auto it = cache_.find(key); it != cache_.end()) {
        ++stats_.dedup_hits;
        ++phase_stats_.dedup_hits;
        return it->second;
    }
    bool result = inner_->independent(x, y, s);
    stats_.record(static_cast<int>(s.size()));
    phase_stats_.record(static_cast<int>(s.size()));
    cache_.emplace(std::move(key), result);
    return result;
}

}  // namespace rslbn
