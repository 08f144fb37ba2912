#include "heatbound/grid.hpp"

#include <cmath>
#include <limits>
#include <queue>

namespace heatbound {

namespace {

long long key_of(int ix, int iy) {
    return (static_cast<long long>(ix) << 32) ^ (static_cast<unsigned int>(iy));
}

// 16-neighbour stencil: axis, diagonal and knight moves.
constexpr int kMoves2D[16][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1}, {1, 1},  {1, -1},
                                 {-1, 1}, {-1, -1}, {1, 2},  {1, -2}, {-1, 2}, {-1, -2},
                                 {2, 1},  {2, -1}, {-2, 1}, {-2, -1}};

}  // namespace

GridDiscretization::GridDiscretization(const Domain& domain, double spacing)
    : domain_(&domain), h_(spacing) {
    if (!(spacing > 0)) throw GeometryError("grid spacing must be positive");
    const auto bb = domain.bounding_box();
    if (domain.dimension() == 1) {
        for (int i = 1;; ++i) {
            const double x = bb[0].x + i * h_;
            if (x >= bb[1].x - 1e-12 * h_) break;
            nodes_.push_back({i, 0, {x, 0}});
        }
    } else {
        const int nx = static_cast<int>(std::ceil((bb[1].x - bb[0].x) / h_));
        const int ny = static_cast<int>(std::ceil((bb[1].y - bb[0].y) / h_));
        for (int j = 0; j <= ny; ++j) {
            for (int i = 0; i <= nx; ++i) {
                const Vec2 p{bb[0].x + i * h_, bb[0].y + j * h_};
                if (domain.inside(p)) nodes_.push_back({i, j, p});
            }
        }
    }
    if (nodes_.size() < 25)
        throw GeometryError("grid too coarse: fewer than 25 in-domain nodes");
    index_nodes();
    build_edges();
}

GridDiscretization::GridDiscretization(const Domain& domain, double spacing,
                                       std::vector<GridNode> nodes)
    : domain_(&domain), h_(spacing), nodes_(std::move(nodes)) {
    index_nodes();
    build_edges();
}

void GridDiscretization::index_nodes() {
    index_.reserve(nodes_.size() * 2);
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        index_[key_of(nodes_[i].ix, nodes_[i].iy)] = static_cast<int>(i);
}

void GridDiscretization::build_edges() {
    adj_.assign(nodes_.size(), {});
    const double closure_tol = 1e-9 * std::max(1.0, domain_->diameter());
    if (dimension() == 1) {
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            for (int d : {-1, 1}) {
                const int j = node_at(nodes_[i].ix + d, 0);
                if (j >= 0) adj_[i].push_back({j, h_});
            }
        }
        return;
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const auto& a = nodes_[i];
        for (const auto& mv : kMoves2D) {
            const int j = node_at(a.ix + mv[0], a.iy + mv[1]);
            if (j < 0) continue;
            const Vec2 b = nodes_[j].p;
            // the connecting segment must stay in the closed region
            const int steps = 2 * (std::abs(mv[0]) + std::abs(mv[1]));
            bool ok = true;
            for (int s = 1; s < steps && ok; ++s) {
                const double u = static_cast<double>(s) / steps;
                ok = domain_->inside_closure(a.p + (b - a.p) * u, closure_tol);
            }
            if (ok) adj_[i].push_back({j, distance(a.p, b)});
        }
    }
}

int GridDiscretization::node_at(int ix, int iy) const {
    const auto it = index_.find(key_of(ix, iy));
    return it == index_.end() ? -1 : it->second;
}

int GridDiscretization::nearest_node(const Vec2& p, double max_radius) const {
    const auto bb = domain_->bounding_box();
    const int reach = static_cast<int>(std::ceil(max_radius / h_)) + 1;
    const int ci = static_cast<int>(std::lround((p.x - bb[0].x) / h_));
    const int cj = dimension() == 1 ? 0 : static_cast<int>(std::lround((p.y - bb[0].y) / h_));
    int best = -1;
    double best_d = max_radius;
    for (int dj = -reach; dj <= reach; ++dj) {
        for (int di = -reach; di <= reach; ++di) {
            const int id = node_at(ci + di, dimension() == 1 ? 0 : cj + dj);
            if (id < 0) continue;
            const double d = distance(nodes_[id].p, p);
            if (d <= best_d) {
                best_d = d;
                best = id;
            }
        }
        if (dimension() == 1) break;
    }
    return best;
}

std::vector<double> distance_field(const GridDiscretization& grid, int source) {
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(grid.size(), inf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        const auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (const auto& [v, w] : grid.neighbors(u)) {
            const double nd = d + w;
            if (nd < dist[v]) {
                dist[v] = nd;
                heap.push({nd, v});
            }
        }
    }
    return dist;
}

}  // namespace heatbound
