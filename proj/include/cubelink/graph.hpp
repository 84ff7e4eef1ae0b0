#pragma once

#include <cstddef>
#include <vector>

namespace cubelink {

// Undirected simple graph on vertex ids 0..n-1 with sorted adjacency lists.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(static_cast<size_t>(n)) {}

    int size() const { return static_cast<int>(adj_.size()); }
    void add_edge(int u, int v);
    void finalize();  // sort and deduplicate adjacency lists

    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
    bool adjacent(int u, int v) const;
    size_t edge_count() const;

private:
    std::vector<std::vector<int>> adj_;
};

Graph cube_graph(int d);

// Same vertex ids; only edges with both ends kept survive.
Graph induced_subgraph(const Graph& G, const std::vector<char>& keep);

std::vector<char> membership(int n, const std::vector<int>& vs);

}  // namespace cubelink
