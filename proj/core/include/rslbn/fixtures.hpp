#pragma once

#include <string>
#include <vector>

#include "rslbn/graph.hpp"

namespace rslbn {

/// Named structures shipped with the toolkit. "diabetes" is the desk-scale
/// benchmark structure (104 vertices, 148 edges, clique number 3,
/// diamond-free); the rest are small teaching graphs.
std::vector<std::string> fixture_names();
bool has_fixture(const std::string& name);
Dag fixture_dag(const std::string& name);

}  // namespace rslbn
