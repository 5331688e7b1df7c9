#pragma once

#include <stdexcept>
#include <string>

namespace rslbn {

/// A vertex index that is out of range, a self-query, or a query whose
/// conditioning set contains one of its endpoints.
class invalid_vertex_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The correlation submatrix of a conditional-independence query is
/// numerically singular (reciprocal condition estimate below tolerance).
class singular_submatrix_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fisher-Z precondition |s| <= n_samples - 3 violated.
class insufficient_samples_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The bounded-clique removability scan exhausted all candidates.
/// Possible only when the clique-number bound is below the true value
/// or the tests are noisy.
class no_removable_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Every clique bound from 1 to n failed; only reachable with noisy
/// finite-sample tests.
class auto_exhausted_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A non-adjacent pair has no recorded separating set.
class missing_sepset_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A graph, dataset, or result file that cannot be parsed.
class parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An edge or name declaration referring to a vertex that does not exist.
class unknown_vertex_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace rslbn
