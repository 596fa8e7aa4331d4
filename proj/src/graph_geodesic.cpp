#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <tuple>
#include <vector>

#include "planimetric/distances.hpp"
#include "planimetric/errors.hpp"
#include "planimetric/geometry.hpp"

namespace planimetric {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kGridDepth = 2.5e-4;   // deepest radial layer
constexpr double kQueryDepthFloor = 5e-4;
constexpr double kInf = std::numeric_limits<double>::infinity();

// 16-neighbor stencil: axis, diagonal, and knight moves.
constexpr int kStencil[16][2] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1}, {1, 1},  {1, -1},
                                 {-1, 1}, {-1, -1}, {1, 2},  {1, -2}, {-1, 2}, {-1, -2},
                                 {2, 1},  {2, -1}, {-2, 1}, {-2, -1}};

struct GridGraph {
    // Node layout: j * angular + i, plus an optional centre node at the end.
    int radial = 0;
    int angular = 0;
    bool has_center = false;
    std::vector<Complex> nodes;
    std::vector<int> offsets; // CSR
    std::vector<int> targets;
    std::vector<double> weights;

    // Radial placement: tau holds the graded coordinate of each layer, rho
    // the corresponding modulus (of the grid parameter for disc-type grids).
    std::vector<double> layer_rho;
    double annulus_inner = 0.0; // 0 for disc-type grids

    // Dense tau(u) table for locating annulus layers; u = log rho.
    std::vector<double> tau_table_u;
    std::vector<double> tau_table_v;

    int node_id(int j, int i) const { return j * angular + ((i % angular) + angular) % angular; }
    int center_id() const { return radial * angular; }
    int size() const { return radial * angular + (has_center ? 1 : 0); }
};

// Midpoint-rule segment cost, recursively split until each piece is at most
// ~0.04 metric units long. The split keeps the discrete path objective close
// to the true line integral at any vertex spacing; otherwise minimizing the
// single-midpoint sum rewards long chords whose midpoints sample cheap
// regions, and the "upper bound" drops below the infimum. The depth cap must
// accommodate the dyadic chains of near-boundary segments, where every level
// contributes a comparable slice of the integral.
double edge_cost(const MetricField& metric, Complex a, Complex b, int depth = 0) {
    double len = std::abs(b - a);
    if (len == 0.0) return 0.0;
    Complex mid = 0.5 * (a + b);
    double cost = metric(mid) * len;
    if (depth >= 28 || cost <= 0.04) return cost;
    return edge_cost(metric, a, mid, depth + 1) + edge_cost(metric, mid, b, depth + 1);
}

double edge_cost_guarded(const MetricField& metric, Complex a, Complex b) {
    try {
        return edge_cost(metric, a, b);
    } catch (const MetricEvaluationFailed&) {
        return kInf;
    }
}

// Map a grid parameter point to the domain (identity except conformal grids).
Complex to_domain(const Domain& domain, Complex param) {
    if (const auto* c = std::get_if<ConformalDomain>(&domain)) return c->map->map(param);
    return param;
}

std::shared_ptr<const GridGraph> build_graph(const Domain& domain, const MetricField& metric,
                                             int resolution) {
    auto graph = std::make_shared<GridGraph>();
    GridGraph& g = *graph;
    g.radial = resolution;
    g.angular = 4 * resolution;
    g.layer_rho.resize(g.radial);

    if (const auto* a = std::get_if<Annulus>(&domain)) {
        g.annulus_inner = a->inner_radius;
        // Grade layers uniformly in integrated radial metric length.
        const double u_lo = std::log(a->inner_radius + kGridDepth);
        const double u_hi = std::log(1.0 - kGridDepth);
        const int fine = 8192;
        g.tau_table_u.resize(fine + 1);
        g.tau_table_v.resize(fine + 1);
        double acc = 0.0;
        double prev = 0.0;
        for (int i = 0; i <= fine; ++i) {
            double u = u_lo + (u_hi - u_lo) * i / fine;
            double rho = std::exp(u);
            double lambda = metric(Complex(rho, 0.0)) * rho;
            if (i > 0) acc += 0.5 * (prev + lambda) * (u_hi - u_lo) / fine;
            prev = lambda;
            g.tau_table_u[i] = u;
            g.tau_table_v[i] = acc;
        }
        for (int j = 0; j < g.radial; ++j) {
            double target = acc * j / (g.radial - 1);
            auto it = std::lower_bound(g.tau_table_v.begin(), g.tau_table_v.end(), target);
            int hi = std::clamp<int>(static_cast<int>(it - g.tau_table_v.begin()), 1, fine);
            double t = (target - g.tau_table_v[hi - 1]) /
                       std::max(g.tau_table_v[hi] - g.tau_table_v[hi - 1], 1e-300);
            double u = g.tau_table_u[hi - 1] + t * (g.tau_table_u[hi] - g.tau_table_u[hi - 1]);
            g.layer_rho[j] = std::exp(u);
        }
        g.has_center = false;
    } else {
        // Disc-type grid in the unit-disc parameter, graded uniformly in the
        // hyperbolic radial coordinate sqrt2*atanh(rho).
        double rho_max = 1.0 - kGridDepth;
        double outer = 1.0;
        if (const auto* s = std::get_if<ScaledDisc>(&domain)) outer = s->radius;
        double tau_max = kSqrt2 * std::atanh(rho_max);
        for (int j = 0; j < g.radial; ++j) {
            double tau = tau_max * (j + 1) / g.radial;
            g.layer_rho[j] = outer * std::tanh(tau / kSqrt2);
        }
        g.has_center = true;
    }

    g.nodes.resize(g.size());
    for (int j = 0; j < g.radial; ++j)
        for (int i = 0; i < g.angular; ++i)
            g.nodes[g.node_id(j, i)] =
                to_domain(domain, std::polar(g.layer_rho[j], 2.0 * kPi * i / g.angular));
    if (g.has_center) g.nodes[g.center_id()] = to_domain(domain, Complex(0.0, 0.0));

    // CSR adjacency with midpoint-rule edge weights.
    const int n = g.size();
    g.offsets.assign(n + 1, 0);
    std::vector<std::pair<int, double>> scratch;
    scratch.reserve(20);
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (int j = 0; j < g.radial; ++j) {
        for (int i = 0; i < g.angular; ++i) {
            int from = g.node_id(j, i);
            auto& out = adj[from];
            for (const auto& s : kStencil) {
                int jj = j + s[0];
                if (jj < 0 || jj >= g.radial) continue;
                int to = g.node_id(jj, i + s[1]);
                out.emplace_back(to, edge_cost_guarded(metric, g.nodes[from], g.nodes[to]));
            }
            if (g.has_center && j <= 1) {
                double w = edge_cost_guarded(metric, g.nodes[from], g.nodes[g.center_id()]);
                out.emplace_back(g.center_id(), w);
                adj[g.center_id()].emplace_back(from, w);
            }
        }
    }
    std::size_t total = 0;
    for (int v = 0; v < n; ++v) {
        g.offsets[v] = static_cast<int>(total);
        total += adj[v].size();
    }
    g.offsets[n] = static_cast<int>(total);
    g.targets.resize(total);
    g.weights.resize(total);
    for (int v = 0; v < n; ++v) {
        int base = g.offsets[v];
        for (std::size_t e = 0; e < adj[v].size(); ++e) {
            g.targets[base + e] = adj[v][e].first;
            g.weights[base + e] = adj[v][e].second;
        }
    }
    return graph;
}

std::shared_ptr<const GridGraph> shared_graph(const Domain& domain, const MetricField& metric,
                                              int resolution) {
    static std::mutex mutex;
    static std::map<std::tuple<std::string, std::string, int>, std::shared_ptr<const GridGraph>>
        cache;
    auto key = std::make_tuple(domain_label(domain), metric.accuracy_tag(), resolution);
    std::scoped_lock lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto graph = build_graph(domain, metric, resolution);
    cache.emplace(std::move(key), graph);
    return graph;
}

// Nearest layer index for a query point.
int locate_layer(const GridGraph& g, const Domain& domain, Complex z, Complex* param_out) {
    Complex param = z;
    if (const auto* c = std::get_if<ConformalDomain>(&domain)) param = c->map->inverse(z);
    *param_out = param;
    double rho = std::abs(param);
    int best = 0;
    double best_err = kInf;
    // layer_rho is monotone; binary search then refine.
    auto it = std::lower_bound(g.layer_rho.begin(), g.layer_rho.end(), rho);
    int hi = std::clamp<int>(static_cast<int>(it - g.layer_rho.begin()), 0, g.radial - 1);
    for (int j = std::max(0, hi - 1); j <= std::min(g.radial - 1, hi + 1); ++j) {
        double err = std::abs(g.layer_rho[j] - rho);
        if (err < best_err) best_err = err, best = j;
    }
    return best;
}

struct PathResult {
    std::vector<Complex> points; // query endpoints included
};

PathResult dijkstra_path(const GridGraph& g, const Domain& domain, const MetricField& metric,
                         Complex z, Complex w) {
    Complex pz, pw;
    int jz = locate_layer(g, domain, z, &pz);
    int jw = locate_layer(g, domain, w, &pw);
    int iz = static_cast<int>(std::lround(std::arg(pz) / (2.0 * kPi / g.angular)));
    int iw = static_cast<int>(std::lround(std::arg(pw) / (2.0 * kPi / g.angular)));

    const int n = g.size();
    const int source = n, sink = n + 1;
    // Temporary star edges connecting the endpoints into the lattice.
    auto star = [&](Complex point, int j0, int i0) {
        std::vector<std::pair<int, double>> out;
        for (int dj = -2; dj <= 2; ++dj) {
            int j = j0 + dj;
            if (j < 0 || j >= g.radial) continue;
            for (int di = -2; di <= 2; ++di) {
                int id = g.node_id(j, i0 + di);
                out.emplace_back(id, edge_cost_guarded(metric, point, g.nodes[id]));
            }
        }
        if (g.has_center && j0 <= 2)
            out.emplace_back(g.center_id(),
                             edge_cost_guarded(metric, point, g.nodes[g.center_id()]));
        return out;
    };
    auto source_edges = star(z, jz, iz);
    auto sink_edges = star(w, jw, iw);

    std::vector<double> dist(n + 2, kInf);
    std::vector<int> prev(n + 2, -1);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.emplace(0.0, source);
    // Direct chord fallback keeps z->w reachable on degenerate star overlaps.
    double direct = edge_cost_guarded(metric, z, w);

    std::vector<double> to_sink(n, kInf);
    for (auto& [id, cost] : sink_edges) to_sink[id] = std::min(to_sink[id], cost);

    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[v]) continue;
        if (v == sink) break;
        if (v == source) {
            for (auto& [id, cost] : source_edges) {
                if (cost == kInf) continue;
                if (d + cost < dist[id]) {
                    dist[id] = d + cost;
                    prev[id] = source;
                    heap.emplace(dist[id], id);
                }
            }
            if (direct < dist[sink]) {
                dist[sink] = direct;
                prev[sink] = source;
                heap.emplace(direct, sink);
            }
            continue;
        }
        if (to_sink[v] != kInf && d + to_sink[v] < dist[sink]) {
            dist[sink] = d + to_sink[v];
            prev[sink] = v;
            heap.emplace(dist[sink], sink);
        }
        for (int e = g.offsets[v]; e < g.offsets[v + 1]; ++e) {
            int to = g.targets[e];
            double cost = g.weights[e];
            if (cost == kInf) continue;
            if (d + cost < dist[to]) {
                dist[to] = d + cost;
                prev[to] = v;
                heap.emplace(dist[to], to);
            }
        }
    }
    if (dist[sink] == kInf) throw NoPath("graph_geodesic: endpoints are not connected on the grid");

    PathResult path;
    std::vector<int> chain;
    for (int v = sink; v != -1; v = prev[v]) chain.push_back(v);
    std::reverse(chain.begin(), chain.end());
    for (int v : chain) {
        if (v == source)
            path.points.push_back(z);
        else if (v == sink)
            path.points.push_back(w);
        else
            path.points.push_back(g.nodes[v]);
    }
    return path;
}

// Gauss-Seidel smoothing: every interior vertex moves to the local minimizer
// of the two adjacent midpoint-rule segment costs, found by a shrinking
// compass search started at a quarter of the local spacing.
void smooth_path(std::vector<Complex>& pts, const MetricField& metric, int sweeps) {
    for (int sweep = 0; sweep < sweeps; ++sweep) {
        for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
            Complex a = pts[i - 1], b = pts[i], c = pts[i + 1];
            double best = edge_cost_guarded(metric, a, b) + edge_cost_guarded(metric, b, c);
            double step = 0.5 * (std::abs(b - a) + std::abs(c - b));
            constexpr double kDiag = 0.7071067811865476;
            for (int level = 0; level < 8 && step > 0.0; ++level) {
                bool moved = true;
                while (moved) {
                    moved = false;
                    for (const auto& dir :
                         {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1),
                          Complex(kDiag, kDiag), Complex(kDiag, -kDiag), Complex(-kDiag, kDiag),
                          Complex(-kDiag, -kDiag)}) {
                        Complex cand = b + step * dir;
                        double cost = edge_cost_guarded(metric, a, cand) +
                                      edge_cost_guarded(metric, cand, c);
                        if (cost < best) {
                            best = cost;
                            b = cand;
                            moved = true;
                        }
                    }
                }
                step *= 0.5;
            }
            pts[i] = b;
        }
    }
}

// Remove vertices whose removal does not increase the (adaptive) path cost.
// This deletes lattice zigzag and long-wavelength detours in a few sweeps,
// which pure local smoothing only diffuses away.
void shortcut_pass(std::vector<Complex>& pts, const MetricField& metric) {
    for (int sweep = 0; sweep < 8; ++sweep) {
        bool removed = false;
        std::vector<Complex> out;
        out.reserve(pts.size());
        out.push_back(pts.front());
        std::size_t i = 0;
        while (i + 1 < pts.size()) {
            if (i + 2 < pts.size()) {
                Complex a = out.back(), b = pts[i + 1], c = pts[i + 2];
                double keep = edge_cost_guarded(metric, a, b) + edge_cost_guarded(metric, b, c);
                double skip = edge_cost_guarded(metric, a, c);
                if (skip <= keep && skip != kInf) {
                    out.push_back(c);
                    i += 2;
                    removed = true;
                    continue;
                }
            }
            out.push_back(pts[i + 1]);
            ++i;
        }
        pts = std::move(out);
        if (!removed) break;
    }
}

void subdivide_once(std::vector<Complex>& pts, std::size_t max_points) {
    if (pts.size() * 2 > max_points) return;
    std::vector<Complex> out;
    out.reserve(pts.size() * 2);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        out.push_back(pts[i]);
        out.push_back(0.5 * (pts[i] + pts[i + 1]));
    }
    out.push_back(pts.back());
    pts = std::move(out);
}

double integrate_path(const std::vector<Complex>& pts, const MetricField& metric) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        total += edge_cost(metric, pts[i], pts[i + 1]);
    return total;
}

double run_at_resolution(const Domain& domain, const MetricField& metric, Complex z, Complex w,
                         int resolution, int sweeps) {
    auto graph = shared_graph(domain, metric, resolution);
    PathResult path = dijkstra_path(*graph, domain, metric, z, w);
    std::vector<Complex> pts = std::move(path.points);
    // Relax the lattice path toward the continuous geodesic coarse-to-fine:
    // shortcutting removes detours while the polyline is short, then the
    // refined levels polish the remainder.
    constexpr int kLevelSweeps[5] = {4, 3, 2, 2, 2};
    for (int level = 0; level < 4; ++level) {
        shortcut_pass(pts, metric);
        smooth_path(pts, metric, sweeps * kLevelSweeps[level]);
        subdivide_once(pts, 4096);
    }
    smooth_path(pts, metric, sweeps * kLevelSweeps[4]);
    return integrate_path(pts, metric);
}

} // namespace

DistanceEstimate graph_geodesic(const Domain& domain, const MetricField& metric, Complex z,
                                Complex w, int resolution) {
    if (resolution < 8) throw ConfigError("graph_geodesic: resolution must be at least 8");
    if (!contains(domain, z) || !contains(domain, w))
        throw PointOutsideDomain("graph_geodesic: endpoints must be interior");
    double floor = std::max(metric.conditioning_floor(), kQueryDepthFloor);
    if (dist_to_boundary(domain, z) < floor || dist_to_boundary(domain, w) < floor)
        throw PointsTooCloseToBoundary("graph_geodesic: endpoint below the depth floor");
    if (z == w) return {0.0, Method::GraphGeodesic, 0.0, 0.0};

    constexpr int kSweeps = 1;
    double value = run_at_resolution(domain, metric, z, w, resolution, kSweeps);
    double coarse = run_at_resolution(domain, metric, z, w, std::max(8, resolution / 2), kSweeps);
    double bracket = std::abs(value - coarse);
    return {value, Method::GraphGeodesic, bracket, bracket};
}

} // namespace planimetric
