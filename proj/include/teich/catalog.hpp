#pragma once

// Built-in origamis and seeded random generators used by the check suites.

#include "matrix.hpp"
#include "origami.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace teich {

struct CatalogEntry {
    std::string name;
    std::vector<int> h; ///< 1-based images
    std::vector<int> v;
    int genus;
};

inline const std::vector<CatalogEntry>& origami_catalog() {
    static const std::vector<CatalogEntry> entries{
        {"L22", {2, 1, 3}, {3, 2, 1}, 2},
        {"L32", {2, 3, 1, 4}, {4, 2, 3, 1}, 2},
        {"L33", {2, 3, 1, 4, 5}, {4, 2, 3, 5, 1}, 2},
        {"stair4", {2, 1, 4, 3}, {1, 3, 2, 4}, 2},
        {"one4", {2, 3, 4, 1}, {3, 4, 2, 1}, 2},
        {"stair5", {2, 1, 4, 3, 5}, {1, 3, 2, 5, 4}, 3},
        {"stair6", {2, 1, 4, 3, 6, 5}, {1, 3, 2, 5, 4, 6}, 3},
        {"eierlegende", {2, 3, 4, 1, 6, 7, 8, 5}, {5, 8, 7, 6, 3, 2, 1, 4}, 3},
    };
    return entries;
}

inline OrigamiRef catalog_origami(const std::string& name) {
    for (const auto& e : origami_catalog())
        if (e.name == name)
            return make_origami(e.h, e.v);
    throw InvalidInput("no catalog origami named \"" + name + "\"");
}

/// Uniform random permutation pairs on n cells, redrawn until the surface is
/// connected and has genus >= 2.
inline OrigamiRef random_origami(std::mt19937_64& rng, int n) {
    if (n < 3)
        throw InvalidInput("random origami needs at least three cells");
    std::vector<int> h(n), v(n);
    for (;;) {
        std::iota(h.begin(), h.end(), 0);
        std::iota(v.begin(), v.end(), 0);
        std::shuffle(h.begin(), h.end(), rng);
        std::shuffle(v.begin(), v.end(), rng);
        auto s = analyze(h, v);
        if (s.connected && s.genus >= 2)
            return std::make_shared<const Origami>(Origami::from_permutations(h, v));
    }
}

/// k x l matrix with entries uniform in {0, ..., max_entry}.
inline IntersectionMatrix random_intersection_matrix(std::mt19937_64& rng, std::size_t k, std::size_t l,
                                                     int max_entry) {
    std::uniform_int_distribution<int> entry(0, max_entry);
    DenseMatrix<Rational> m(k, l);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < l; ++j)
            m(i, j) = entry(rng);
    return IntersectionMatrix(std::move(m));
}

} // namespace teich
