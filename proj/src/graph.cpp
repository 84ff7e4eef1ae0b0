#include "cubelink/graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace cubelink {

void Graph::add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("Graph: self loop");
    if (u < 0 || v < 0 || u >= size() || v >= size()) throw std::out_of_range("Graph: vertex out of range");
    adj_[static_cast<size_t>(u)].push_back(v);
    adj_[static_cast<size_t>(v)].push_back(u);
}

void Graph::finalize() {
    for (auto& list : adj_) {
        std::sort(list.begin(), list.end());
        list.erase(std::unique(list.begin(), list.end()), list.end());
    }
}

bool Graph::adjacent(int u, int v) const {
    if (u < 0 || u >= size()) return false;
    const auto& list = neighbors(u);
    return std::binary_search(list.begin(), list.end(), v);
}

size_t Graph::edge_count() const {
    size_t total = 0;
    for (const auto& list : adj_) total += list.size();
    return total / 2;
}

Graph cube_graph(int d) {
    if (d < 0 || d > 20) throw std::invalid_argument("cube_graph: dimension out of range");
    Graph g(1 << d);
    for (int v = 0; v < (1 << d); ++v)
        for (int a = 0; a < d; ++a) {
            int w = v ^ (1 << a);
            if (v < w) g.add_edge(v, w);
        }
    g.finalize();
    return g;
}

Graph induced_subgraph(const Graph& G, const std::vector<char>& keep) {
    Graph h(G.size());
    for (int u = 0; u < G.size(); ++u) {
        if (!keep[static_cast<size_t>(u)]) continue;
        for (int w : G.neighbors(u))
            if (u < w && keep[static_cast<size_t>(w)]) h.add_edge(u, w);
    }
    h.finalize();
    return h;
}

std::vector<char> membership(int n, const std::vector<int>& vs) {
    std::vector<char> m(static_cast<size_t>(n), 0);
    for (int v : vs) m.at(static_cast<size_t>(v)) = 1;
    return m;
}

}  // namespace cubelink
