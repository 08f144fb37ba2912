#pragma once

#include <unordered_map>
#include <vector>

#include "heatbound/geometry.hpp"

namespace heatbound {

struct GridNode {
    int ix = 0;
    int iy = 0;
    Vec2 p;
};

// Masked regular lattice over a Domain.  Nodes are lattice points strictly
// inside the region; edges use a 16-neighbour stencil and exist only when the
// connecting segment stays in the closed region (sampled check).
class GridDiscretization {
public:
    GridDiscretization(const Domain& domain, double spacing);
    // Test hook: explicit node set, edges rebuilt with the usual stencil.
    GridDiscretization(const Domain& domain, double spacing, std::vector<GridNode> nodes);

    const Domain& domain() const { return *domain_; }
    double spacing() const { return h_; }
    int dimension() const { return domain_->dimension(); }
    int size() const { return static_cast<int>(nodes_.size()); }
    const GridNode& node(int id) const { return nodes_[id]; }
    const std::vector<GridNode>& nodes() const { return nodes_; }

    // -1 when the lattice point is not a node
    int node_at(int ix, int iy) const;
    // nearest node within max_radius of p (Euclidean); -1 if none
    int nearest_node(const Vec2& p, double max_radius) const;
    const std::vector<std::pair<int, double>>& neighbors(int id) const { return adj_[id]; }

private:
    void index_nodes();
    void build_edges();

    const Domain* domain_;
    double h_;
    std::vector<GridNode> nodes_;
    std::unordered_map<long long, int> index_;
    std::vector<std::vector<std::pair<int, double>>> adj_;
};

// Single-source shortest path over the masked grid graph.  Unreachable nodes
// get +infinity.
std::vector<double> distance_field(const GridDiscretization& grid, int source);

}  // namespace heatbound
