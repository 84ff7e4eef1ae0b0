#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubelink {

// Vertex coordinates packed little-endian: bit i is coordinate i.
using Bits = std::uint32_t;

inline constexpr int kMaxCubeDim = 30;

inline Bits full_mask(int d) { return d >= 32 ? ~Bits{0} : ((Bits{1} << d) - 1); }
inline int popcount(Bits b) { return __builtin_popcount(b); }
inline int lowest_bit(Bits b) { return __builtin_ctz(b); }

struct CubeVertex {
    Bits coords = 0;
    int d = 0;

    CubeVertex() = default;
    CubeVertex(Bits c, int dim);

    bool bit(int i) const { return (coords >> i) & 1U; }
    auto operator<=>(const CubeVertex&) const = default;
};

struct CubeFace {
    Bits mask = 0;    // fixed coordinates
    Bits values = 0;  // values on the fixed coordinates (zero elsewhere)
    int d = 0;

    CubeFace() = default;
    CubeFace(Bits fixed_mask, Bits fixed_values, int dim);

    static CubeFace whole(int dim) { return CubeFace(0, 0, dim); }
    static CubeFace facet(int dim, int axis, bool value);

    int dim() const { return d - popcount(mask); }
    Bits free_axes() const { return full_mask(d) & ~mask; }
    bool contains(Bits v) const { return (v & mask) == values; }
    bool contains(const CubeVertex& v) const { return contains(v.coords); }
    bool contains(const CubeFace& other) const;
    bool is_facet() const { return popcount(mask) == 1; }
    std::vector<Bits> vertices() const;

    bool operator==(const CubeFace& o) const { return mask == o.mask && values == o.values && d == o.d; }
    std::strong_ordering operator<=>(const CubeFace& o) const {
        if (auto c = mask <=> o.mask; c != 0) return c;
        if (auto c = values <=> o.values; c != 0) return c;
        return d <=> o.d;
    }
};

struct Direction {
    int axis = 0;
    auto operator<=>(const Direction&) const = default;
};

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

int dist(Bits u, Bits v);
int dist(const CubeVertex& u, const CubeVertex& v);

Bits opposite_vertex(Bits v, const CubeFace& K);
CubeVertex opposite_vertex(const CubeVertex& v, const CubeFace& K);

CubeFace opposite_facet(const CubeFace& F);

// Projection onto a facet target: vertices of the opposite facet move to their
// neighbour in the target, vertices already in the target stay put.
Bits project(Bits x, const CubeFace& target);
CubeVertex project(const CubeVertex& x, const CubeFace& target);
CubeFace project(const CubeFace& face, const CubeFace& target);
std::vector<Bits> project(const std::vector<Bits>& xs, const CubeFace& target);

CubeFace smallest_face(const std::vector<Bits>& S, int d);

// Axes crossed by some edge of the subgraph induced by Z. Only axes free in K
// are considered (K defaults to the whole cube).
std::vector<Direction> associated_pairs(const std::vector<Bits>& Z, int d);
std::vector<Direction> associated_pairs(const std::vector<Bits>& Z, const CubeFace& K);

// Lowest free axis of K that is not associated with Z.
Direction find_unassociated_pair(const std::vector<Bits>& Z, int d);
Direction find_unassociated_pair(const std::vector<Bits>& Z, const CubeFace& K);

std::vector<Bits> cube_neighbors(Bits v, const CubeFace& K);

std::string to_string(Bits v, int d);
std::string to_string(const CubeVertex& v);
Bits parse_bits(const std::string& s);  // coordinate 0 is the rightmost character, as in binary
CubeVertex parse_vertex(const std::string& s);

}  // namespace cubelink
