#include "cubelink/paths.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace cubelink {

std::vector<int> terminals_of(const Pairing& Y) {
    std::vector<int> X;
    X.reserve(Y.size() * 2);
    for (auto [s, t] : Y) {
        X.push_back(s);
        X.push_back(t);
    }
    return X;
}

namespace {

// Unit vertex capacities via vertex splitting: v_in = 2v, v_out = 2v + 1.
class FlowNetwork {
public:
    explicit FlowNetwork(int nodes) : head_(static_cast<size_t>(nodes), -1) {}

    void add_arc(int from, int to, int cap) {
        arcs_.push_back({to, cap, head_[static_cast<size_t>(from)]});
        head_[static_cast<size_t>(from)] = static_cast<int>(arcs_.size()) - 1;
        arcs_.push_back({from, 0, head_[static_cast<size_t>(to)]});
        head_[static_cast<size_t>(to)] = static_cast<int>(arcs_.size()) - 1;
    }

    // Arcs are stored as linked lists in reverse insertion order; collect them
    // in insertion order so augmentation prefers lower vertex ids.
    void freeze() {
        out_.assign(head_.size(), {});
        for (size_t v = 0; v < head_.size(); ++v) {
            for (int a = head_[v]; a != -1; a = arcs_[static_cast<size_t>(a)].next) out_[v].push_back(a);
            std::reverse(out_[v].begin(), out_[v].end());
        }
    }

    bool augment(int s, int t) {
        std::vector<int> via(head_.size(), -1);
        std::vector<char> seen(head_.size(), 0);
        std::deque<int> queue{s};
        seen[static_cast<size_t>(s)] = 1;
        while (!queue.empty() && !seen[static_cast<size_t>(t)]) {
            int u = queue.front();
            queue.pop_front();
            for (int a : out_[static_cast<size_t>(u)]) {
                const Arc& arc = arcs_[static_cast<size_t>(a)];
                if (arc.cap > 0 && !seen[static_cast<size_t>(arc.to)]) {
                    seen[static_cast<size_t>(arc.to)] = 1;
                    via[static_cast<size_t>(arc.to)] = a;
                    queue.push_back(arc.to);
                }
            }
        }
        if (!seen[static_cast<size_t>(t)]) return false;
        for (int v = t; v != s;) {
            int a = via[static_cast<size_t>(v)];
            arcs_[static_cast<size_t>(a)].cap -= 1;
            arcs_[static_cast<size_t>(a ^ 1)].cap += 1;
            v = arcs_[static_cast<size_t>(a ^ 1)].to;
        }
        return true;
    }

    std::vector<char> reachable(int s) const {
        std::vector<char> seen(head_.size(), 0);
        std::deque<int> queue{s};
        seen[static_cast<size_t>(s)] = 1;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            for (int a : out_[static_cast<size_t>(u)]) {
                const Arc& arc = arcs_[static_cast<size_t>(a)];
                if (arc.cap > 0 && !seen[static_cast<size_t>(arc.to)]) {
                    seen[static_cast<size_t>(arc.to)] = 1;
                    queue.push_back(arc.to);
                }
            }
        }
        return seen;
    }

    // Flow carried by forward arc a (its reverse residual capacity).
    int flow(int a) const { return arcs_[static_cast<size_t>(a ^ 1)].cap; }
    void consume(int a) { arcs_[static_cast<size_t>(a ^ 1)].cap -= 1; }
    bool forward(int a) const { return (a & 1) == 0; }
    int target(int a) const { return arcs_[static_cast<size_t>(a)].to; }
    const std::vector<int>& out(int v) const { return out_[static_cast<size_t>(v)]; }

private:
    struct Arc {
        int to;
        int cap;
        int next;
    };
    std::vector<Arc> arcs_;
    std::vector<int> head_;
    std::vector<std::vector<int>> out_;
};

constexpr int kInf = std::numeric_limits<int>::max() / 4;

}  // namespace

MengerResult disjoint_paths(const Graph& G, const std::vector<int>& A, const std::vector<int>& B, int k,
                            const std::vector<int>& forbidden) {
    MengerResult result;
    if (k <= 0) {
        result.ok = true;
        return result;
    }
    if (A.empty() || B.empty()) throw std::invalid_argument("disjoint_paths: empty terminal set");
    const int n = G.size();
    std::vector<char> inA = membership(n, A), inB = membership(n, B), banned = membership(n, forbidden);
    for (int v = 0; v < n; ++v)
        if (banned[static_cast<size_t>(v)] && (inA[static_cast<size_t>(v)] || inB[static_cast<size_t>(v)]))
            throw std::invalid_argument("disjoint_paths: forbidden vertex in A or B");

    // A single vertex on either side is the centre of a fan: the paths share it
    // and are otherwise disjoint. An edge between two fan centres carries one path.
    std::vector<int> capacity(static_cast<size_t>(n), 1);
    const bool shared_single = A.size() == 1 && B.size() == 1 && A[0] == B[0];
    if (!shared_single) {
        if (A.size() == 1) capacity[static_cast<size_t>(A[0])] = kInf;
        if (B.size() == 1) capacity[static_cast<size_t>(B[0])] = kInf;
    }

    const int source = 2 * n, sink = 2 * n + 1;
    FlowNetwork net(2 * n + 2);
    for (int v = 0; v < n; ++v)
        if (inA[static_cast<size_t>(v)]) net.add_arc(source, 2 * v, kInf);
    for (int v = 0; v < n; ++v) {
        if (banned[static_cast<size_t>(v)]) continue;
        net.add_arc(2 * v, 2 * v + 1, capacity[static_cast<size_t>(v)]);
        for (int w : G.neighbors(v))
            if (!banned[static_cast<size_t>(w)]) {
                const bool centres = capacity[static_cast<size_t>(v)] > 1 && capacity[static_cast<size_t>(w)] > 1;
                net.add_arc(2 * v + 1, 2 * w, centres ? 1 : kInf);
            }
        if (inB[static_cast<size_t>(v)]) net.add_arc(2 * v + 1, sink, kInf);
    }
    net.freeze();

    int value = 0;
    while (value < k && net.augment(source, sink)) ++value;

    if (value < k) {
        std::vector<char> seen = net.reachable(source);
        for (int v = 0; v < n; ++v)
            if (seen[static_cast<size_t>(2 * v)] && !seen[static_cast<size_t>(2 * v + 1)]) result.cut.push_back(v);
        return result;
    }

    // Decompose: from the source, follow flow-carrying forward arcs to the sink.
    for (int a0 : net.out(source)) {
        if (!net.forward(a0)) continue;
        while (net.flow(a0) > 0) {
            net.consume(a0);
            Path p;
            int node = net.target(a0);
            while (node != sink) {
                if (node % 2 == 0) p.push_back(node / 2);
                int next = -1;
                for (int a : net.out(node))
                    if (net.forward(a) && net.flow(a) > 0) {
                        next = a;
                        break;
                    }
                if (next < 0) throw std::logic_error("disjoint_paths: broken flow decomposition");
                net.consume(next);
                node = net.target(next);
            }
            // Trim so the path meets A only first and B only last.
            size_t first = 0;
            for (size_t i = 0; i < p.size(); ++i)
                if (inA[static_cast<size_t>(p[i])]) first = i;
            size_t last = p.size() - 1;
            for (size_t i = first; i < p.size(); ++i)
                if (inB[static_cast<size_t>(p[i])]) {
                    last = i;
                    break;
                }
            result.paths.emplace_back(p.begin() + static_cast<long>(first), p.begin() + static_cast<long>(last) + 1);
        }
    }
    result.ok = true;
    return result;
}

std::optional<Path> bfs_path(const Graph& G, int s, int t, const std::vector<char>& blocked) {
    if (s == t) return Path{s};
    const int n = G.size();
    std::vector<int> parent(static_cast<size_t>(n), -1);
    std::vector<char> seen(static_cast<size_t>(n), 0);
    std::deque<int> queue{s};
    seen[static_cast<size_t>(s)] = 1;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : G.neighbors(u)) {
            if (seen[static_cast<size_t>(w)]) continue;
            if (w == t) {
                Path p{t};
                for (int x = u; x != -1; x = parent[static_cast<size_t>(x)]) p.push_back(x);
                std::reverse(p.begin(), p.end());
                return p;
            }
            if (blocked[static_cast<size_t>(w)]) continue;
            seen[static_cast<size_t>(w)] = 1;
            parent[static_cast<size_t>(w)] = u;
            queue.push_back(w);
        }
    }
    return std::nullopt;
}

std::optional<Path> x_valid_path(const Graph& G, int s, int t, const std::vector<int>& X) {
    std::vector<char> blocked = membership(G.size(), X);
    return bfs_path(G, s, t, blocked);
}

double AffineFunction::operator()(Bits x) const {
    double value = constant;
    for (size_t i = 0; i < coeffs.size(); ++i)
        if ((x >> i) & 1U) value += coeffs[i];
    return value;
}

namespace {

// Walk from u along strictly f-increasing edges until f > 0.
Path climb(int d, const AffineFunction& f, Bits u) {
    Path walk{static_cast<int>(u)};
    Bits x = u;
    while (f(x) <= 0) {
        Bits best = x;
        for (int a = 0; a < d; ++a) {
            Bits y = x ^ (Bits{1} << a);
            if (f(y) > f(best)) best = y;
        }
        if (best == x) break;
        x = best;
        walk.push_back(static_cast<int>(x));
    }
    return walk;
}

bool inner_positive(const AffineFunction& f, const Path& p) {
    for (size_t i = 1; i + 1 < p.size(); ++i)
        if (f(static_cast<Bits>(p[i])) <= 0) return false;
    return true;
}

Path shortcut(const Path& p) {
    Path out;
    for (int v : p) {
        auto it = std::find(out.begin(), out.end(), v);
        if (it != out.end()) out.erase(it + 1, out.end());
        else out.push_back(v);
    }
    return out;
}

}  // namespace

Path linear_function_path(int d, const AffineFunction& f, Bits u, Bits v) {
    if (d < 1 || d > 20) throw PreconditionViolation("linear_function_path: dimension out of range");
    if (f(u) < 0 || f(v) < 0) throw PreconditionViolation("linear_function_path: endpoint with negative value");
    Graph Q = cube_graph(d);
    const int n = Q.size();
    std::vector<char> nonpositive(static_cast<size_t>(n), 0);
    bool any_positive = false;
    for (int x = 0; x < n; ++x) {
        nonpositive[static_cast<size_t>(x)] = f(static_cast<Bits>(x)) <= 0;
        any_positive |= !nonpositive[static_cast<size_t>(x)];
    }
    if (!any_positive) throw PreconditionViolation("linear_function_path: f is nowhere positive");
    if (u == v) return Path{static_cast<int>(u)};
    if (Q.adjacent(static_cast<int>(u), static_cast<int>(v))) return Path{static_cast<int>(u), static_cast<int>(v)};

    Path from_u = climb(d, f, u), from_v = climb(d, f, v);
    if (f(static_cast<Bits>(from_u.back())) > 0 && f(static_cast<Bits>(from_v.back())) > 0) {
        if (auto mid = bfs_path(Q, from_u.back(), from_v.back(), nonpositive)) {
            Path p = from_u;
            p.insert(p.end(), mid->begin() + 1, mid->end());
            p.insert(p.end(), from_v.rbegin() + 1, from_v.rend());
            p = shortcut(p);
            if (inner_positive(f, p)) return p;
        }
    }
    // Fallback: search {f > 0} with u and v allowed only as endpoints.
    if (auto p = bfs_path(Q, static_cast<int>(u), static_cast<int>(v), nonpositive)) {
        if (!inner_positive(f, *p)) throw std::logic_error("linear_function_path: contract violated");
        return *p;
    }
    throw PreconditionViolation("linear_function_path: no path with positive inner vertices");
}

ValidationReport validate_linkage(const Graph& G, const Pairing& Y, const PathSystem& L, const std::vector<int>& avoid) {
    auto fail = [](const std::string& msg) { return ValidationReport{false, msg}; };
    if (L.size() != Y.size()) return fail("expected " + std::to_string(Y.size()) + " paths, got " + std::to_string(L.size()));
    std::set<int> avoided(avoid.begin(), avoid.end());
    std::vector<int> owner(static_cast<size_t>(G.size()), -1);
    for (size_t i = 0; i < L.size(); ++i) {
        const Path& p = L[i];
        auto [s, t] = Y[i];
        if (p.empty()) return fail("path " + std::to_string(i) + " is empty");
        bool forward = p.front() == s && p.back() == t, backward = p.front() == t && p.back() == s;
        if (!forward && !backward)
            return fail("path " + std::to_string(i) + " does not join " + std::to_string(s) + " and " + std::to_string(t));
        for (size_t j = 0; j < p.size(); ++j) {
            int v = p[j];
            if (v < 0 || v >= G.size()) return fail("path " + std::to_string(i) + " uses unknown vertex " + std::to_string(v));
            if (avoided.count(v)) return fail("path " + std::to_string(i) + " meets avoided vertex " + std::to_string(v));
            if (owner[static_cast<size_t>(v)] == static_cast<int>(i))
                return fail("path " + std::to_string(i) + " repeats vertex " + std::to_string(v));
            if (owner[static_cast<size_t>(v)] >= 0)
                return fail("paths " + std::to_string(owner[static_cast<size_t>(v)]) + " and " + std::to_string(i) +
                            " share vertex " + std::to_string(v));
            owner[static_cast<size_t>(v)] = static_cast<int>(i);
            if (j > 0 && !G.adjacent(p[j - 1], v))
                return fail("path " + std::to_string(i) + " uses non-edge " + std::to_string(p[j - 1]) + "-" +
                            std::to_string(v));
        }
    }
    return {};
}

}  // namespace cubelink
