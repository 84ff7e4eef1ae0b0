#include "cubelink/hypercube.hpp"

#include <algorithm>

namespace cubelink {

namespace {

void check_dim(int d) {
    if (d < 0 || d > kMaxCubeDim) throw std::invalid_argument("cube dimension out of range: " + std::to_string(d));
}

}  // namespace

CubeVertex::CubeVertex(Bits c, int dim) : coords(c), d(dim) {
    check_dim(dim);
    if ((c & ~full_mask(dim)) != 0) throw std::invalid_argument("vertex has bits beyond its dimension");
}

CubeFace::CubeFace(Bits fixed_mask, Bits fixed_values, int dim) : mask(fixed_mask), values(fixed_values & fixed_mask), d(dim) {
    check_dim(dim);
    if ((fixed_mask & ~full_mask(dim)) != 0) throw std::invalid_argument("face mask has bits beyond its dimension");
}

CubeFace CubeFace::facet(int dim, int axis, bool value) {
    if (axis < 0 || axis >= dim) throw std::invalid_argument("facet axis out of range");
    Bits m = Bits{1} << axis;
    return CubeFace(m, value ? m : 0, dim);
}

bool CubeFace::contains(const CubeFace& other) const {
    // other ⊆ this iff every coordinate fixed here is fixed there to the same value
    return (other.mask & mask) == mask && (other.values & mask) == values;
}

std::vector<Bits> CubeFace::vertices() const {
    std::vector<Bits> out;
    Bits fr = free_axes();
    Bits sub = 0;
    do {
        out.push_back(values | sub);
        sub = (sub - fr) & fr;
    } while (sub != 0);
    std::sort(out.begin(), out.end());
    return out;
}

int dist(Bits u, Bits v) { return popcount(u ^ v); }

int dist(const CubeVertex& u, const CubeVertex& v) {
    if (u.d != v.d) throw DimensionMismatch("dist: dimension mismatch");
    return dist(u.coords, v.coords);
}

Bits opposite_vertex(Bits v, const CubeFace& K) {
    if (!K.contains(v)) throw std::invalid_argument("opposite_vertex: vertex not in face");
    return v ^ K.free_axes();
}

CubeVertex opposite_vertex(const CubeVertex& v, const CubeFace& K) {
    if (v.d != K.d) throw DimensionMismatch("opposite_vertex: dimension mismatch");
    return CubeVertex(opposite_vertex(v.coords, K), v.d);
}

CubeFace opposite_facet(const CubeFace& F) {
    if (!F.is_facet()) throw std::invalid_argument("opposite_facet: not a facet");
    return CubeFace(F.mask, F.values ^ F.mask, F.d);
}

Bits project(Bits x, const CubeFace& target) {
    if (!target.is_facet()) throw std::invalid_argument("project: target is not a facet");
    return (x & ~target.mask) | target.values;
}

CubeVertex project(const CubeVertex& x, const CubeFace& target) {
    if (x.d != target.d) throw DimensionMismatch("project: dimension mismatch");
    return CubeVertex(project(x.coords, target), x.d);
}

CubeFace project(const CubeFace& face, const CubeFace& target) {
    if (!target.is_facet()) throw std::invalid_argument("project: target is not a facet");
    if (face.d != target.d) throw DimensionMismatch("project: dimension mismatch");
    if ((face.mask & target.mask) == 0)
        throw std::invalid_argument("project: face is not contained in either facet of the opposite pair");
    return CubeFace(face.mask, (face.values & ~target.mask) | target.values, face.d);
}

std::vector<Bits> project(const std::vector<Bits>& xs, const CubeFace& target) {
    std::vector<Bits> out;
    out.reserve(xs.size());
    for (Bits x : xs) out.push_back(project(x, target));
    return out;
}

CubeFace smallest_face(const std::vector<Bits>& S, int d) {
    if (S.empty()) throw std::invalid_argument("smallest_face: empty set");
    Bits all = full_mask(d), agree = all;
    for (Bits v : S) agree &= ~(v ^ S.front());
    return CubeFace(agree & all, S.front(), d);
}

std::vector<Direction> associated_pairs(const std::vector<Bits>& Z, const CubeFace& K) {
    if (Z.empty()) throw std::invalid_argument("associated_pairs: empty set");
    Bits found = 0;
    for (size_t i = 0; i < Z.size(); ++i)
        for (size_t j = i + 1; j < Z.size(); ++j) {
            Bits x = Z[i] ^ Z[j];
            if (popcount(x) == 1) found |= x;
        }
    found &= K.free_axes();
    std::vector<Direction> out;
    for (int a = 0; a < K.d; ++a)
        if ((found >> a) & 1U) out.push_back({a});
    return out;
}

std::vector<Direction> associated_pairs(const std::vector<Bits>& Z, int d) {
    return associated_pairs(Z, CubeFace::whole(d));
}

Direction find_unassociated_pair(const std::vector<Bits>& Z, const CubeFace& K) {
    Bits used = 0;
    if (!Z.empty())
        for (Direction dir : associated_pairs(Z, K)) used |= Bits{1} << dir.axis;
    Bits candidates = K.free_axes() & ~used;
    if (candidates == 0) throw std::invalid_argument("find_unassociated_pair: every direction is associated");
    return {lowest_bit(candidates)};
}

Direction find_unassociated_pair(const std::vector<Bits>& Z, int d) {
    return find_unassociated_pair(Z, CubeFace::whole(d));
}

std::vector<Bits> cube_neighbors(Bits v, const CubeFace& K) {
    std::vector<Bits> out;
    Bits fr = K.free_axes();
    for (int a = 0; a < K.d; ++a)
        if ((fr >> a) & 1U) out.push_back(v ^ (Bits{1} << a));
    return out;
}

std::string to_string(Bits v, int d) {
    std::string s(static_cast<size_t>(d), '0');
    for (int i = 0; i < d; ++i)
        if ((v >> i) & 1U) s[static_cast<size_t>(d - 1 - i)] = '1';
    return s;
}

std::string to_string(const CubeVertex& v) { return to_string(v.coords, v.d); }

Bits parse_bits(const std::string& s) {
    if (s.empty() || s.size() > static_cast<size_t>(kMaxCubeDim))
        throw std::invalid_argument("bad vertex label '" + s + "'");
    Bits v = 0;
    const size_t n = s.size();
    for (size_t i = 0; i < n; ++i) {
        if (s[i] == '1') v |= Bits{1} << (n - 1 - i);
        else if (s[i] != '0') throw std::invalid_argument("bad vertex label '" + s + "'");
    }
    return v;
}

CubeVertex parse_vertex(const std::string& s) { return CubeVertex(parse_bits(s), static_cast<int>(s.size())); }

}  // namespace cubelink
