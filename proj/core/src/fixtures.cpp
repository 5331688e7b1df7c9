#include "rslbn/fixtures.hpp"

#include <algorithm>
#include <stdexcept>

namespace rslbn {

namespace {

Dag from_list(int n, std::initializer_list<std::pair<int, int>> edges) {
    return Dag::from_edges(n, std::vector<std::pair<int, int>>(edges));
}

Dag chain3() { return from_list(3, {{0, 1}, {1, 2}}); }

Dag collider3() { return from_list(3, {{0, 2}, {1, 2}}); }

// A -> B, A -> C, A -> D, B -> D, C -> D.
Dag diamond_left() { return from_list(4, {{0, 1}, {0, 2}, {0, 3}, {1, 3}, {2, 3}}); }

// B -> A <- C, A -> D, B -> D, C -> D.
Dag diamond_right() { return from_list(4, {{1, 0}, {2, 0}, {0, 3}, {1, 3}, {2, 3}}); }

Dag diabetes();  // defined below, large edge table

}  // namespace

std::vector<std::string> fixture_names() {
    return {"chain3", "collider3", "diamond-left", "diamond-right", "diabetes"};
}

bool has_fixture(const std::string& name) {
    auto names = fixture_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

Dag fixture_dag(const std::string& name) {
    if (name == "chain3") return chain3();
    if (name == "collider3") return collider3();
    if (name == "diamond-left") return diamond_left();
    if (name == "diamond-right") return diamond_right();
    if (name == "diabetes") return diabetes();
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

namespace {

// Benchmark structure shaped like a mid-size clinical monitoring network:
// a seven-neighbor hub whose five children each have a second parent, a long
// band of vertex-sharing triangles, and a few terminal sinks. Frozen so that
// runs are comparable across machines; summary statistics are pinned by the
// fixture tests.
Dag diabetes() {
    return from_list(104, {
        {0, 2}, {1, 2}, {2, 3}, {2, 5}, {2, 7}, {2, 9},
        {2, 11}, {3, 13}, {4, 3}, {4, 102}, {6, 1}, {6, 5},
        {6, 103}, {8, 7}, {10, 9}, {12, 11}, {13, 14}, {13, 15},
        {14, 15}, {15, 16}, {15, 17}, {16, 17}, {17, 18}, {17, 19},
        {18, 19}, {19, 20}, {19, 21}, {20, 21}, {21, 22}, {21, 23},
        {22, 23}, {23, 24}, {23, 25}, {24, 25}, {25, 26}, {25, 27},
        {26, 27}, {27, 28}, {27, 29}, {28, 29}, {29, 30}, {29, 31},
        {30, 31}, {31, 32}, {31, 33}, {32, 33}, {33, 34}, {33, 35},
        {34, 35}, {35, 36}, {35, 37}, {36, 37}, {37, 38}, {37, 39},
        {38, 39}, {39, 40}, {39, 41}, {40, 41}, {41, 42}, {41, 43},
        {42, 43}, {43, 44}, {43, 45}, {44, 45}, {45, 46}, {45, 47},
        {46, 47}, {47, 48}, {47, 49}, {48, 49}, {49, 50}, {49, 51},
        {50, 51}, {51, 52}, {51, 53}, {52, 53}, {53, 54}, {53, 55},
        {54, 55}, {55, 56}, {55, 57}, {56, 57}, {57, 58}, {57, 59},
        {58, 59}, {59, 60}, {59, 61}, {60, 61}, {61, 62}, {61, 63},
        {62, 63}, {63, 64}, {63, 65}, {64, 65}, {65, 66}, {65, 67},
        {66, 67}, {67, 68}, {67, 69}, {68, 69}, {69, 70}, {69, 71},
        {70, 71}, {71, 72}, {71, 73}, {72, 73}, {73, 74}, {73, 75},
        {74, 75}, {75, 76}, {75, 77}, {76, 77}, {77, 78}, {77, 79},
        {78, 79}, {79, 80}, {79, 81}, {80, 81}, {81, 82}, {81, 83},
        {82, 83}, {83, 84}, {83, 85}, {84, 85}, {85, 86}, {85, 87},
        {86, 87}, {87, 88}, {87, 89}, {88, 89}, {89, 90}, {89, 91},
        {90, 91}, {91, 92}, {91, 93}, {92, 93}, {93, 94}, {93, 95},
        {94, 95}, {95, 96}, {95, 97}, {96, 97}, {97, 98}, {97, 99},
        {98, 99}, {99, 100}, {99, 101}, {100, 101},
    });
}

}  // namespace

}  // namespace rslbn
