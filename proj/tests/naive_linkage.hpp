#pragma once

// Test-side reference: adjacency built straight from coordinates and a plain
// depth-first enumeration of simple paths. Shares no code with the library.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <utility>
#include <vector>

namespace naive {

using Adjacency = std::vector<std::vector<int>>;
using Pairs = std::vector<std::pair<int, int>>;

inline Adjacency cube(int d) {
    Adjacency g(size_t{1} << d);
    for (int v = 0; v < (1 << d); ++v)
        for (int i = 0; i < d; ++i) g[static_cast<size_t>(v)].push_back(v ^ (1 << i));
    return g;
}

// The link of v in Q_d is Q_d without v and its antipode; vertex ids stay cube ids,
// and the two removed vertices are isolated.
inline Adjacency cube_link(int d, int v) {
    const int o = v ^ ((1 << d) - 1);
    Adjacency g = cube(d);
    for (int u = 0; u < (1 << d); ++u) {
        auto& nb = g[static_cast<size_t>(u)];
        if (u == v || u == o) {
            nb.clear();
            continue;
        }
        nb.erase(std::remove_if(nb.begin(), nb.end(), [&](int w) { return w == v || w == o; }), nb.end());
    }
    return g;
}

class Search {
public:
    Search(const Adjacency& g, const Pairs& pairs, const std::vector<int>& avoid)
        : g_(g), pairs_(pairs), used_(g.size(), 0) {
        for (auto [s, t] : pairs) used_[static_cast<size_t>(s)] = used_[static_cast<size_t>(t)] = 1;
        for (int x : avoid) used_[static_cast<size_t>(x)] = 1;
    }

    bool linked() { return route(0); }
    const std::vector<std::vector<int>>& paths() const { return paths_; }

private:
    bool route(size_t i) {
        if (i == pairs_.size()) return true;
        auto [s, t] = pairs_[i];
        std::vector<int> path{s};
        return extend(i, path, t);
    }

    bool extend(size_t i, std::vector<int>& path, int t) {
        const int u = path.back();
        for (int w : g_[static_cast<size_t>(u)]) {
            if (w == t) {
                path.push_back(t);
                paths_.push_back(path);
                if (route(i + 1)) return true;
                paths_.pop_back();
                path.pop_back();
                continue;
            }
            if (used_[static_cast<size_t>(w)]) continue;
            used_[static_cast<size_t>(w)] = 1;
            path.push_back(w);
            if (extend(i, path, t)) return true;
            path.pop_back();
            used_[static_cast<size_t>(w)] = 0;
        }
        return false;
    }

    const Adjacency& g_;
    Pairs pairs_;
    std::vector<char> used_;
    std::vector<std::vector<int>> paths_;
};

inline bool linked(const Adjacency& g, const Pairs& pairs, const std::vector<int>& avoid = {}) {
    return Search(g, pairs, avoid).linked();
}

// The three ways to split four vertices into two pairs.
inline std::vector<Pairs> two_pairings(int a, int b, int c, int d) {
    return {{{a, b}, {c, d}}, {{a, c}, {b, d}}, {{a, d}, {b, c}}};
}

// Counts (pairings, unlinked) over every 2-pairing of the given vertices.
inline std::pair<long long, long long> two_pair_census(const Adjacency& g, const std::vector<int>& vs) {
    long long total = 0, unlinked = 0;
    const size_t n = vs.size();
    for (size_t a = 0; a < n; ++a)
        for (size_t b = a + 1; b < n; ++b)
            for (size_t c = b + 1; c < n; ++c)
                for (size_t d = c + 1; d < n; ++d)
                    for (const auto& Y : two_pairings(vs[a], vs[b], vs[c], vs[d])) {
                        ++total;
                        if (!linked(g, Y)) ++unlinked;
                    }
    return {total, unlinked};
}

// Checks a path system by hand: endpoints, edges, simplicity and disjointness.
inline bool valid(const Adjacency& g, const Pairs& pairs, const std::vector<std::vector<int>>& paths,
                  const std::vector<int>& avoid = {}) {
    if (paths.size() != pairs.size()) return false;
    std::vector<int> seen(g.size(), 0);
    for (int x : avoid) seen[static_cast<size_t>(x)] = -1;
    for (size_t i = 0; i < paths.size(); ++i) {
        const auto& p = paths[i];
        if (p.empty()) return false;
        const bool forward = p.front() == pairs[i].first && p.back() == pairs[i].second;
        const bool backward = p.front() == pairs[i].second && p.back() == pairs[i].first;
        if (!forward && !backward) return false;
        for (size_t j = 0; j < p.size(); ++j) {
            const int v = p[j];
            if (v < 0 || static_cast<size_t>(v) >= g.size() || seen[static_cast<size_t>(v)] != 0) return false;
            seen[static_cast<size_t>(v)] = 1;
            if (j > 0) {
                const auto& nb = g[static_cast<size_t>(p[j - 1])];
                if (std::find(nb.begin(), nb.end(), v) == nb.end()) return false;
            }
        }
    }
    return true;
}

}  // namespace naive
