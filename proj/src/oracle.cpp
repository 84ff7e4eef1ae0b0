#include "cubelink/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bitset>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <thread>

namespace cubelink {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Linked: return "linked";
        case Verdict::Unlinkable: return "unlinkable";
        case Verdict::Timeout: return "timeout";
    }
    return "?";
}

std::chrono::milliseconds default_oracle_timeout() {
    if (const char* env = std::getenv("CUBELINK_ORACLE_TIMEOUT_MS")) {
        char* end = nullptr;
        long long ms = std::strtoll(env, &end, 10);
        if (end != env && *end == '\0' && ms > 0) return std::chrono::milliseconds(ms);
    }
    return std::chrono::milliseconds(10000);
}

namespace {

struct BudgetExhausted {};

// Backtracking over chordless paths: any linkage can be shortcut to one whose
// paths are chordless in G, so restricting to them loses nothing.
template <size_t N>
class LinkageSearch {
public:
    using Mask = std::bitset<N>;

    LinkageSearch(const Graph& G, Pairing pairs, const std::vector<int>& avoid, const OracleBudget& budget)
        : pairs_(std::move(pairs)), budget_(budget), start_(std::chrono::steady_clock::now()) {
        const int n = G.size();
        adj_.resize(static_cast<size_t>(n));
        for (int v = 0; v < n; ++v)
            for (int w : G.neighbors(v)) adj_[static_cast<size_t>(v)].set(static_cast<size_t>(w));
        for (int v = 0; v < n; ++v) free_.set(static_cast<size_t>(v));
        for (int a : avoid) free_.reset(static_cast<size_t>(a));
        for (auto [s, t] : pairs_) {
            terminal_.set(static_cast<size_t>(s));
            terminal_.set(static_cast<size_t>(t));
        }
        paths_.resize(pairs_.size());
    }

    bool run() {
        if (pairs_.empty()) return true;
        Mask inner = free_ & ~terminal_;
        for (auto [s, t] : pairs_)
            if (!reach(s, t, inner)) return false;
        return route(0);
    }

    const PathSystem& paths() const { return paths_; }
    long long nodes() const { return nodes_; }
    size_t deepest() const { return deepest_; }

private:
    bool reach(int s, int t, const Mask& inner) const {
        if (adj_[static_cast<size_t>(s)].test(static_cast<size_t>(t))) return true;
        Mask reached, frontier;
        reached.set(static_cast<size_t>(s));
        frontier.set(static_cast<size_t>(s));
        while (frontier.any()) {
            Mask next;
            for (size_t v = frontier._Find_first(); v < N; v = frontier._Find_next(v)) next |= adj_[v];
            if (next.test(static_cast<size_t>(t))) return true;
            next &= inner & ~reached;
            reached |= next;
            frontier = next;
        }
        return false;
    }

    std::optional<Path> shortest(int s, int t, const Mask& inner) const {
        std::vector<int> parent(adj_.size(), -1);
        std::deque<int> queue{s};
        Mask seen;
        seen.set(static_cast<size_t>(s));
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            const Mask& nb = adj_[static_cast<size_t>(u)];
            for (size_t w = nb._Find_first(); w < N; w = nb._Find_next(w)) {
                if (static_cast<int>(w) == t) {
                    Path p{t};
                    for (int x = u; x != -1; x = parent[static_cast<size_t>(x)]) p.push_back(x);
                    std::reverse(p.begin(), p.end());
                    return p;
                }
                if (seen.test(w) || !inner.test(w)) continue;
                seen.set(w);
                parent[w] = u;
                queue.push_back(static_cast<int>(w));
            }
        }
        return std::nullopt;
    }

    void tick() {
        ++nodes_;
        if (budget_.max_nodes >= 0 && nodes_ > budget_.max_nodes) throw BudgetExhausted{};
        if (budget_.timeout.count() > 0 && (nodes_ & 1023) == 0 &&
            std::chrono::steady_clock::now() - start_ > budget_.timeout)
            throw BudgetExhausted{};
    }

    bool others_reachable(size_t idx, const Mask& inner) const {
        for (size_t j = idx + 1; j < pairs_.size(); ++j)
            if (!reach(pairs_[j].first, pairs_[j].second, inner)) return false;
        return true;
    }

    bool route(size_t idx) {
        deepest_ = std::max(deepest_, idx);
        auto [s, t] = pairs_[idx];
        if (idx + 1 == pairs_.size()) {
            auto p = shortest(s, t, free_ & ~terminal_);
            if (!p) return false;
            paths_[idx] = *p;
            deepest_ = pairs_.size();
            return true;
        }
        Path path{s};
        Mask on_path;
        on_path.set(static_cast<size_t>(s));
        return extend(idx, path, on_path);
    }

    bool extend(size_t idx, Path& path, Mask& on_path) {
        const int cur = path.back();
        const int t = pairs_[idx].second;
        Mask earlier = on_path;
        earlier.reset(static_cast<size_t>(cur));
        const Mask& nb = adj_[static_cast<size_t>(cur)];
        if (nb.test(static_cast<size_t>(t)) && (adj_[static_cast<size_t>(t)] & earlier).none()) {
            tick();
            path.push_back(t);
            Mask saved = free_;
            free_ &= ~on_path;
            free_.reset(static_cast<size_t>(t));
            if (others_reachable(idx, free_ & ~terminal_)) {
                paths_[idx] = path;
                if (route(idx + 1)) return true;
            }
            free_ = saved;
            path.pop_back();
        }
        Mask candidates = nb & free_ & ~terminal_ & ~on_path;
        for (size_t w = candidates._Find_first(); w < N; w = candidates._Find_next(w)) {
            if ((adj_[w] & earlier).any()) continue;  // would create a chord
            tick();
            path.push_back(static_cast<int>(w));
            on_path.set(w);
            Mask inner = free_ & ~terminal_ & ~on_path;
            bool ok = reach(static_cast<int>(w), t, inner) && others_reachable(idx, inner);
            if (ok && extend(idx, path, on_path)) return true;
            on_path.reset(w);
            path.pop_back();
        }
        return false;
    }

    std::vector<Mask> adj_;
    Pairing pairs_;
    Mask free_, terminal_;
    PathSystem paths_;
    OracleBudget budget_;
    std::chrono::steady_clock::time_point start_;
    long long nodes_ = 0;
    size_t deepest_ = 0;
};

std::vector<int> bfs_distances(const Graph& G, int s, const std::vector<char>& blocked) {
    std::vector<int> dist(static_cast<size_t>(G.size()), -1);
    std::deque<int> queue{s};
    dist[static_cast<size_t>(s)] = 0;
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : G.neighbors(u))
            if (dist[static_cast<size_t>(w)] < 0 && !blocked[static_cast<size_t>(w)]) {
                dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(u)] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

template <size_t N>
OracleResult run_search(const Graph& G, const Pairing& ordered, const std::vector<int>& avoid, const OracleBudget& budget,
                        const std::vector<size_t>& order) {
    OracleResult result;
    LinkageSearch<N> search(G, ordered, avoid, budget);
    try {
        bool ok = search.run();
        result.verdict = ok ? Verdict::Linked : Verdict::Unlinkable;
        if (ok) {
            result.paths.resize(order.size());
            for (size_t i = 0; i < order.size(); ++i) result.paths[order[i]] = search.paths()[i];
        }
    } catch (const BudgetExhausted&) {
        result.verdict = Verdict::Timeout;
    }
    result.nodes = search.nodes();
    result.pairs_routed = search.deepest();
    return result;
}

}  // namespace

OracleResult oracle_linkage(const Graph& G, const Pairing& Y, const std::vector<int>& avoid, const OracleBudget& budget) {
    const int n = G.size();
    if (n > 512) throw std::invalid_argument("oracle_linkage: graph too large");
    std::vector<int> X = terminals_of(Y);
    std::vector<int> sorted = X;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("oracle_linkage: terminals are not distinct");
    std::vector<char> blocked = membership(n, avoid);
    for (int x : X) {
        if (x < 0 || x >= n) throw std::invalid_argument("oracle_linkage: terminal out of range");
        if (blocked[static_cast<size_t>(x)]) throw std::invalid_argument("oracle_linkage: terminal in avoid set");
    }

    // Hardest (farthest apart) pairs first.
    std::vector<int> distance;
    for (auto [s, t] : Y) {
        int dv = bfs_distances(G, s, blocked)[static_cast<size_t>(t)];
        distance.push_back(dv < 0 ? n + 1 : dv);
    }
    std::vector<size_t> order(Y.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return distance[a] > distance[b]; });
    Pairing ordered;
    for (size_t i : order) ordered.push_back(Y[i]);

    if (n <= 64) return run_search<64>(G, ordered, avoid, budget, order);
    return run_search<512>(G, ordered, avoid, budget, order);
}

std::vector<Pairing> perfect_matchings(const std::vector<int>& X) {
    std::vector<Pairing> out;
    if (X.size() % 2 != 0) throw std::invalid_argument("perfect_matchings: odd terminal count");
    Pairing current;
    std::vector<char> used(X.size(), 0);
    std::function<void()> rec = [&]() {
        size_t first = 0;
        while (first < X.size() && used[first]) ++first;
        if (first == X.size()) {
            out.push_back(current);
            return;
        }
        used[first] = 1;
        for (size_t j = first + 1; j < X.size(); ++j) {
            if (used[j]) continue;
            used[j] = 1;
            current.emplace_back(X[first], X[j]);
            rec();
            current.pop_back();
            used[j] = 0;
        }
        used[first] = 0;
    };
    rec();
    return out;
}

namespace {

struct CubeSymmetry {
    std::vector<int> perm;
    Bits flip;
};

std::vector<CubeSymmetry> cube_symmetries(int d) {
    std::vector<CubeSymmetry> out;
    std::vector<int> perm(static_cast<size_t>(d));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        for (Bits flip = 0; flip < (Bits{1} << d); ++flip) out.push_back({perm, flip});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

int apply_symmetry(const CubeSymmetry& g, int v) {
    Bits out = 0;
    for (size_t i = 0; i < g.perm.size(); ++i)
        if ((static_cast<Bits>(v) >> i) & 1U) out |= Bits{1} << g.perm[i];
    return static_cast<int>(out ^ g.flip);
}

std::vector<std::pair<int, int>> canonical_with(const std::vector<CubeSymmetry>& group, const Pairing& Y, int avoid_vertex) {
    std::vector<std::pair<int, int>> best;
    for (const auto& g : group) {
        std::vector<std::pair<int, int>> img;
        for (auto [s, t] : Y) {
            int a = apply_symmetry(g, s), b = apply_symmetry(g, t);
            img.emplace_back(std::min(a, b), std::max(a, b));
        }
        std::sort(img.begin(), img.end());
        if (avoid_vertex >= 0) img.emplace_back(-1, apply_symmetry(g, avoid_vertex));
        if (best.empty() || img < best) best = std::move(img);
    }
    return best;
}

template <typename Fn>
void parallel_for(size_t count, int threads, Fn&& fn) {
    unsigned hw = std::thread::hardware_concurrency();
    size_t workers = threads > 0 ? static_cast<size_t>(threads) : std::max<size_t>(1, hw);
    workers = std::min(workers, std::max<size_t>(1, count));
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (size_t i = next++; i < count; i = next++) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace

std::vector<std::pair<int, int>> canonical_cube_pairing(const Pairing& Y, int d, int avoid_vertex) {
    return canonical_with(cube_symmetries(d), Y, avoid_vertex);
}

nlohmann::ordered_json census(const CensusHost& host, const CensusOptions& options, const WitnessDetector& detector) {
    auto started = std::chrono::steady_clock::now();
    std::vector<int> V = host.vertices;
    if (V.empty()) {
        V.resize(static_cast<size_t>(host.graph.size()));
        std::iota(V.begin(), V.end(), 0);
    }
    std::sort(V.begin(), V.end());
    const size_t m = static_cast<size_t>(2 * options.k);
    if (options.k < 1 || m > V.size()) throw std::invalid_argument("census: bad k for host");

    std::vector<Pairing> instances;
    if (options.exhaustive) {
        // Count first so oversized requests fail fast.
        double subsets = 1;
        for (size_t i = 0; i < m; ++i) subsets = subsets * static_cast<double>(V.size() - i) / static_cast<double>(i + 1);
        double matchings = 1;
        for (size_t i = m - 1; i > 1; i -= 2) matchings *= static_cast<double>(i);
        if (subsets * matchings > static_cast<double>(options.max_instances))
            throw std::invalid_argument("census: exhaustive enumeration too large for this host");
        std::vector<size_t> idx(m);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            std::vector<int> X;
            for (size_t i : idx) X.push_back(V[i]);
            for (auto& Y : perfect_matchings(X)) instances.push_back(std::move(Y));
            size_t i = m;
            while (i > 0 && idx[i - 1] == V.size() - m + (i - 1)) --i;
            if (i == 0) break;
            ++idx[i - 1];
            for (size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
        }
    } else {
        std::mt19937_64 rng(options.seed);
        for (long long s = 0; s < options.samples; ++s) {
            std::vector<int> pool = V;
            for (size_t i = 0; i < m; ++i) {
                std::uniform_int_distribution<size_t> pick(i, pool.size() - 1);
                std::swap(pool[i], pool[pick(rng)]);
            }
            Pairing Y;
            for (size_t i = 0; i < m; i += 2) Y.emplace_back(pool[i], pool[i + 1]);
            instances.push_back(std::move(Y));
        }
    }

    OracleBudget budget;
    budget.timeout = options.exhaustive ? std::chrono::milliseconds(0)
                                        : (options.timeout.count() > 0 ? options.timeout : default_oracle_timeout());

    std::vector<Verdict> verdicts(instances.size());
    long long classes = -1;
    if (options.use_symmetry && host.cube_dim > 0 && host.cube_dim <= 5) {
        auto group = cube_symmetries(host.cube_dim);
        std::vector<std::vector<std::pair<int, int>>> keys(instances.size());
        parallel_for(instances.size(), options.threads,
                     [&](size_t i) { keys[i] = canonical_with(group, instances[i], -1); });
        std::map<std::vector<std::pair<int, int>>, size_t> slot;
        std::vector<size_t> representative;
        std::vector<size_t> class_of(instances.size());
        for (size_t i = 0; i < instances.size(); ++i) {
            auto [it, fresh] = slot.emplace(keys[i], representative.size());
            if (fresh) representative.push_back(i);
            class_of[i] = it->second;
        }
        std::vector<Verdict> class_verdict(representative.size());
        parallel_for(representative.size(), options.threads, [&](size_t c) {
            class_verdict[c] = oracle_linkage(host.graph, instances[representative[c]], {}, budget).verdict;
        });
        for (size_t i = 0; i < instances.size(); ++i) verdicts[i] = class_verdict[class_of[i]];
        classes = static_cast<long long>(representative.size());
    } else {
        parallel_for(instances.size(), options.threads,
                     [&](size_t i) { verdicts[i] = oracle_linkage(host.graph, instances[i], {}, budget).verdict; });
    }

    std::vector<std::optional<std::string>> witness(instances.size());
    if (detector)
        for (size_t i = 0; i < instances.size(); ++i) witness[i] = detector(instances[i]);

    long long linked = 0, unlinked = 0, timeouts = 0, unlinked_flagged = 0, unlinked_unflagged = 0, linked_flagged = 0;
    std::map<std::string, long long> histogram;
    nlohmann::ordered_json samples = nlohmann::ordered_json::array();
    auto name = [&](int v) {
        return host.labels.empty() ? std::to_string(v) : host.labels[static_cast<size_t>(v)];
    };
    for (size_t i = 0; i < instances.size(); ++i) {
        if (witness[i]) ++histogram[*witness[i]];
        switch (verdicts[i]) {
            case Verdict::Linked:
                ++linked;
                if (witness[i]) ++linked_flagged;
                break;
            case Verdict::Timeout: ++timeouts; break;
            case Verdict::Unlinkable:
                ++unlinked;
                if (witness[i]) ++unlinked_flagged;
                else ++unlinked_unflagged;
                if (samples.size() < 10) {
                    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
                    for (auto [s, t] : instances[i]) pairs.push_back({name(s), name(t)});
                    samples.push_back({{"pairs", pairs}, {"witness", witness[i] ? *witness[i] : "none"}});
                }
                break;
        }
    }

    nlohmann::ordered_json report;
    report["host"] = host.name;
    report["vertices"] = V.size();
    report["k"] = options.k;
    report["mode"] = options.exhaustive ? "exhaustive" : "sample";
    if (!options.exhaustive) {
        report["samples"] = options.samples;
        report["seed"] = options.seed;
    }
    report["total"] = instances.size();
    report["linked"] = linked;
    report["unlinked"] = unlinked;
    report["timeouts"] = timeouts;
    if (classes >= 0) report["symmetry_classes"] = classes;
    nlohmann::ordered_json hist = nlohmann::ordered_json::object();
    for (auto& [kind, count] : histogram) hist[kind] = count;
    report["obstruction_histogram"] = hist;
    report["unlinked_with_witness"] = unlinked_flagged;
    report["unlinked_without_witness"] = unlinked_unflagged;
    report["witness_on_linked"] = linked_flagged;
    report["witness_samples"] = samples;
    report["wall_time_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - started).count();
    return report;
}

nlohmann::ordered_json SeparatorCensus::to_json() const {
    nlohmann::ordered_json j;
    j["d"] = d;
    j["subsets"] = subsets;
    j["separators"] = separators;
    j["all_neighbourhoods"] = all_neighbourhoods;
    j["all_independent"] = all_independent;
    j["all_two_components"] = all_two_components;
    return j;
}

SeparatorCensus separator_census(int d) {
    if (d < 1 || d > 4) throw std::invalid_argument("separator_census: dimension must be in [1, 4]");
    Graph Q = cube_graph(d);
    const int n = Q.size();
    SeparatorCensus out;
    out.d = d;
    for (unsigned S = 0; S < (1U << n); ++S) {
        if (popcount(S) != d) continue;
        ++out.subsets;
        std::vector<int> comp(static_cast<size_t>(n), -1);
        int components = 0;
        std::vector<int> sizes;
        for (int v = 0; v < n; ++v) {
            if ((S >> v) & 1U || comp[static_cast<size_t>(v)] >= 0) continue;
            int size = 0;
            std::deque<int> queue{v};
            comp[static_cast<size_t>(v)] = components;
            while (!queue.empty()) {
                int u = queue.front();
                queue.pop_front();
                ++size;
                for (int w : Q.neighbors(u))
                    if (!((S >> w) & 1U) && comp[static_cast<size_t>(w)] < 0) {
                        comp[static_cast<size_t>(w)] = components;
                        queue.push_back(w);
                    }
            }
            sizes.push_back(size);
            ++components;
        }
        if (components < 2) continue;
        ++out.separators;
        bool neighbourhood = false;
        for (int v = 0; v < n && !neighbourhood; ++v) {
            unsigned N = 0;
            for (int w : Q.neighbors(v)) N |= 1U << w;
            neighbourhood = N == S;
        }
        out.all_neighbourhoods &= neighbourhood;
        for (int u = 0; u < n; ++u)
            for (int w : Q.neighbors(u))
                if (((S >> u) & 1U) && ((S >> w) & 1U)) out.all_independent = false;
        bool two = components == 2 && (sizes[0] == 1 || sizes[1] == 1);
        out.all_two_components &= two;
    }
    return out;
}

bool common_neighbor_check(const Graph& G) {
    const int n = G.size();
    std::vector<int> count(static_cast<size_t>(n));
    for (int u = 0; u < n; ++u) {
        std::fill(count.begin(), count.end(), 0);
        for (int x : G.neighbors(u))
            for (int w : G.neighbors(x))
                if (w > u && ++count[static_cast<size_t>(w)] >= 3) return false;
    }
    return true;
}

}  // namespace cubelink
