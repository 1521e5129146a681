#pragma once

// Square-tiled surfaces given by a right-neighbour and a top-neighbour
// permutation, with their cylinder decompositions and cone points.

#include "errors.hpp"
#include "matrix.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace teich {

struct Cylinder {
    std::string id;
    Side side;
    std::vector<int> squares; ///< 0-based cell ids, cycle order starting at the smallest
    int length() const noexcept { return static_cast<int>(squares.size()); }
};

/// One corner of one cell. Corners are numbered counterclockwise from the
/// bottom-left: 0 = BL, 1 = BR, 2 = TR, 3 = TL.
struct Corner {
    int square;
    int corner;
    friend bool operator==(const Corner&, const Corner&) = default;
};

/// A vertex of the tiling; its cone angle is 2*pi*multiplicity.
struct ConePoint {
    int multiplicity;
    std::vector<Corner> corners; ///< counterclockwise around the vertex
};

/// Combinatorics of a permutation pair, before any complexity check.
struct OrigamiStructure {
    int squares = 0;
    bool connected = false;
    std::vector<Cylinder> horizontal;
    std::vector<Cylinder> vertical;
    std::vector<ConePoint> vertices;
    int euler_characteristic = 0; ///< V - E + F
    int genus = 0;                ///< from the Euler characteristic
};

namespace detail {

inline void check_permutation(const std::vector<int>& p, const char* name) {
    std::vector<char> hit(p.size(), 0);
    for (int x : p) {
        if (x < 0 || static_cast<std::size_t>(x) >= p.size() || hit[x])
            throw InvalidInput(std::string("permutation ") + name + " is not a bijection");
        hit[x] = 1;
    }
}

inline std::vector<int> inverse(const std::vector<int>& p) {
    std::vector<int> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        q[p[i]] = static_cast<int>(i);
    return q;
}

inline std::vector<Cylinder> cycles(const std::vector<int>& p, Side side) {
    std::vector<Cylinder> out;
    std::vector<char> seen(p.size(), 0);
    const char prefix = side == Side::Horizontal ? 'A' : 'B';
    for (std::size_t s = 0; s < p.size(); ++s) {
        if (seen[s])
            continue;
        Cylinder c{std::string(1, prefix) + std::to_string(out.size() + 1), side, {}};
        for (int x = static_cast<int>(s); !seen[x]; x = p[x]) {
            seen[x] = 1;
            c.squares.push_back(x);
        }
        out.push_back(std::move(c));
    }
    return out;
}

inline bool transitive(const std::vector<int>& h, const std::vector<int>& v) {
    const std::size_t n = h.size();
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    auto hi = inverse(h), vi = inverse(v);
    while (!stack.empty()) {
        int s = stack.back();
        stack.pop_back();
        for (int t : {h[s], v[s], hi[s], vi[s]})
            if (!seen[t]) {
                seen[t] = 1;
                ++reached;
                stack.push_back(t);
            }
    }
    return reached == n;
}

} // namespace detail

/// Builds cylinders and walks around every cell corner to find the vertices.
/// `right` and `top` are 0-based image arrays.
inline OrigamiStructure analyze(const std::vector<int>& right, const std::vector<int>& top) {
    if (right.empty() || right.size() != top.size())
        throw InvalidInput("permutations must be non-empty and of equal size");
    detail::check_permutation(right, "h");
    detail::check_permutation(top, "v");

    OrigamiStructure s;
    s.squares = static_cast<int>(right.size());
    s.connected = detail::transitive(right, top);
    s.horizontal = detail::cycles(right, Side::Horizontal);
    s.vertical = detail::cycles(top, Side::Vertical);

    const auto left = detail::inverse(right), below = detail::inverse(top);
    // Turning counterclockwise about a vertex crosses, in order, the left edge
    // of a cell seen at its BL corner, the bottom edge of the cell seen at BR,
    // the right edge of the cell seen at TR and the top edge of the cell seen at TL.
    auto next = [&](Corner c) -> Corner {
        switch (c.corner) {
        case 0: return {left[c.square], 1};
        case 1: return {below[c.square], 2};
        case 2: return {right[c.square], 3};
        default: return {top[c.square], 0};
        }
    };

    std::vector<std::array<char, 4>> used(right.size(), {0, 0, 0, 0});
    for (int sq = 0; sq < s.squares; ++sq)
        for (int k = 0; k < 4; ++k) {
            if (used[sq][k])
                continue;
            ConePoint vp{0, {}};
            Corner c{sq, k};
            do {
                if (used[c.square][c.corner])
                    throw InvalidInput("corner walk revisited a corner");
                used[c.square][c.corner] = 1;
                vp.corners.push_back(c);
                c = next(c);
            } while (!(c == Corner{sq, k}));
            if (vp.corners.size() % 4 != 0)
                throw InvalidInput("corner walk closed after a non-multiple of four corners");
            vp.multiplicity = static_cast<int>(vp.corners.size() / 4);
            s.vertices.push_back(std::move(vp));
        }

    const int v = static_cast<int>(s.vertices.size());
    const int e = 2 * s.squares, f = s.squares;
    s.euler_characteristic = v - e + f;
    s.genus = (2 - s.euler_characteristic) / 2;
    return s;
}

/// A validated, connected square-tiled surface of genus at least two.
/// Immutable; share it through OrigamiRef.
class Origami {
public:
    /// 0-based image arrays.
    static Origami from_permutations(std::vector<int> right, std::vector<int> top) {
        auto s = analyze(right, top);
        if (!s.connected)
            throw InvalidInput("origami is disconnected (h, v not transitive)");
        if (s.genus < 2)
            throw InvalidInput("complexity too low: genus " + std::to_string(s.genus) + " < 2");
        return Origami(std::move(right), std::move(top), std::move(s));
    }

    /// 1-based image arrays, as in the JSON format.
    static Origami from_images(const std::vector<int>& h, const std::vector<int>& v) {
        auto shift = [](const std::vector<int>& p) {
            std::vector<int> q;
            for (int x : p)
                q.push_back(x - 1);
            return q;
        };
        return from_permutations(shift(h), shift(v));
    }

    int squares() const noexcept { return structure_.squares; }
    int genus() const noexcept { return structure_.genus; }
    int right(int s) const { return right_.at(s); }
    int top(int s) const { return top_.at(s); }
    const std::vector<int>& right_map() const noexcept { return right_; }
    const std::vector<int>& top_map() const noexcept { return top_; }
    const OrigamiStructure& structure() const noexcept { return structure_; }
    const std::vector<ConePoint>& vertices() const noexcept { return structure_.vertices; }

    const std::vector<Cylinder>& cylinders(Side side) const noexcept {
        return side == Side::Horizontal ? structure_.horizontal : structure_.vertical;
    }
    std::size_t cylinder_count(Side side) const noexcept { return cylinders(side).size(); }

    /// Horizontal cylinder containing the cell, and the vertical one.
    int horizontal_of(int sq) const { return h_of_.at(sq); }
    int vertical_of(int sq) const { return v_of_.at(sq); }

    std::optional<std::pair<Side, std::size_t>> find(const std::string& id) const {
        for (Side side : {Side::Horizontal, Side::Vertical}) {
            const auto& cs = cylinders(side);
            for (std::size_t i = 0; i < cs.size(); ++i)
                if (cs[i].id == id)
                    return std::pair{side, i};
        }
        return std::nullopt;
    }

    std::size_t index_of(const std::string& id, Side side) const {
        auto hit = find(id);
        if (!hit)
            throw InvalidInput("no cylinder \"" + id + "\" on this origami");
        if (hit->first != side)
            throw InvalidInput("cylinder \"" + id + "\" is not " + to_string(side));
        return hit->second;
    }

    /// n_ij = #cells shared by horizontal cylinder i and vertical cylinder j.
    const IntersectionMatrix& intersection_matrix() const noexcept { return matrix_; }

    /// Cells in horizontal i intersect vertical j, as plain counts.
    int count(std::size_t i, std::size_t j) const { return counts_.at(i).at(j); }

    friend bool operator==(const Origami& a, const Origami& b) {
        return a.right_ == b.right_ && a.top_ == b.top_;
    }

private:
    Origami(std::vector<int> right, std::vector<int> top, OrigamiStructure s)
        : right_(std::move(right)), top_(std::move(top)), structure_(std::move(s)),
          matrix_(build_matrix()) {}

    IntersectionMatrix build_matrix() {
        const auto n = static_cast<std::size_t>(structure_.squares);
        h_of_.assign(n, -1);
        v_of_.assign(n, -1);
        for (std::size_t i = 0; i < structure_.horizontal.size(); ++i)
            for (int sq : structure_.horizontal[i].squares)
                h_of_[sq] = static_cast<int>(i);
        for (std::size_t j = 0; j < structure_.vertical.size(); ++j)
            for (int sq : structure_.vertical[j].squares)
                v_of_[sq] = static_cast<int>(j);
        counts_.assign(structure_.horizontal.size(), std::vector<int>(structure_.vertical.size(), 0));
        for (std::size_t sq = 0; sq < n; ++sq)
            ++counts_[h_of_[sq]][v_of_[sq]];
        DenseMatrix<Rational> m(counts_.size(), structure_.vertical.size());
        std::vector<std::string> rows, cols;
        for (std::size_t i = 0; i < counts_.size(); ++i) {
            rows.push_back(structure_.horizontal[i].id);
            for (std::size_t j = 0; j < counts_[i].size(); ++j)
                m(i, j) = counts_[i][j];
        }
        for (const auto& c : structure_.vertical)
            cols.push_back(c.id);
        return IntersectionMatrix(std::move(m), Side::Horizontal, std::move(rows), std::move(cols));
    }

    std::vector<int> right_;
    std::vector<int> top_;
    OrigamiStructure structure_;
    std::vector<int> h_of_;
    std::vector<int> v_of_;
    std::vector<std::vector<int>> counts_;
    IntersectionMatrix matrix_;
};

using OrigamiRef = std::shared_ptr<const Origami>;

inline OrigamiRef make_origami(const std::vector<int>& h_images, const std::vector<int>& v_images) {
    return std::make_shared<const Origami>(Origami::from_images(h_images, v_images));
}

/// Gauss-Bonnet in integer form: sum over vertices of (multiplicity - 1)
/// equals 2g - 2, with g taken from the Euler characteristic.
inline bool gauss_bonnet_holds(const OrigamiStructure& s) {
    int excess = 0, corners = 0;
    for (const auto& v : s.vertices) {
        excess += v.multiplicity - 1;
        corners += static_cast<int>(v.corners.size());
    }
    return corners == 4 * s.squares && (2 - s.euler_characteristic) % 2 == 0 && excess == 2 * s.genus - 2;
}

/// Row sums are horizontal lengths, column sums vertical lengths, total n.
inline bool partition_holds(const Origami& o) {
    const auto& m = o.intersection_matrix();
    Rational total = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Rational row = 0;
        for (std::size_t j = 0; j < m.cols(); ++j)
            row += m(i, j);
        if (row != o.cylinders(Side::Horizontal)[i].length())
            return false;
        total += row;
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
        Rational col = 0;
        for (std::size_t i = 0; i < m.rows(); ++i)
            col += m(i, j);
        if (col != o.cylinders(Side::Vertical)[j].length())
            return false;
    }
    return total == o.squares();
}

} // namespace teich
