#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <vector>

#include "agora/kinetic.hpp"

namespace agora {

namespace {

constexpr std::size_t kOtAtomCap = 2000;

/// Exact W1 on the line: integral of |F_mu - F_nu| between CDF breakpoints.
double w1_line(const WeightedParticleMeasure& mu, const WeightedParticleMeasure& nu) {
    struct Event {
        double x;
        double dw;
    };
    std::vector<Event> events;
    events.reserve(mu.size() + nu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) events.push_back({mu.atoms[i][0], mu.weights[i]});
    for (std::size_t j = 0; j < nu.size(); ++j) events.push_back({nu.atoms[j][0], -nu.weights[j]});
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.x < b.x; });

    double cost = 0.0, cum = 0.0, x_prev = events.front().x;
    for (const Event& e : events) {
        cost += std::abs(cum) * (e.x - x_prev);
        cum += e.dw;
        x_prev = e.x;
    }
    return cost;
}

struct BasisCell {
    int i, j;
    double flow;
};

/// Exact balanced transportation problem by the network-simplex method on the
/// bipartite atom graph. Supplies carry a tiny staircase perturbation to keep
/// the basis nondegenerate; it shifts the optimum by O(m * delta * diameter).
double w1_simplex(const WeightedParticleMeasure& mu, const WeightedParticleMeasure& nu) {
    int m = static_cast<int>(mu.size());
    int n = static_cast<int>(nu.size());
    std::vector<double> supply(mu.weights.begin(), mu.weights.end());
    std::vector<double> demand(nu.weights.begin(), nu.weights.end());
    double s = 0.0, d = 0.0;
    for (double w : supply) s += w;
    for (double w : demand) d += w;
    // rescale both sides to total 1 so the problem is exactly balanced
    for (double& w : supply) w /= s;
    for (double& w : demand) w /= d;

    constexpr double kDelta = 1e-13;
    for (int i = 0; i < m; ++i) supply[i] += kDelta;
    demand[n - 1] += kDelta * m;

    std::vector<std::vector<double>> cost(m, std::vector<double>(n));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) cost[i][j] = (mu.atoms[i] - nu.atoms[j]).norm();

    // northwest-corner initial basic feasible solution
    std::vector<BasisCell> basis;
    basis.reserve(m + n);
    {
        std::vector<double> a = supply, b = demand;
        int i = 0, j = 0;
        while (i < m && j < n) {
            double f = std::min(a[i], b[j]);
            basis.push_back({i, j, f});
            a[i] -= f;
            b[j] -= f;
            if (a[i] <= b[j] && i + 1 < m) ++i;
            else if (j + 1 < n) ++j;
            else break;
        }
    }

    int nodes = m + n;
    std::vector<std::vector<int>> adj(nodes);  // node -> basis-edge indices
    std::vector<double> u(m), v(n);
    std::vector<int> parent_edge(nodes), parent_node(nodes);

    auto rebuild_adj = [&] {
        for (auto& a : adj) a.clear();
        for (int e = 0; e < static_cast<int>(basis.size()); ++e) {
            adj[basis[e].i].push_back(e);
            adj[m + basis[e].j].push_back(e);
        }
    };
    auto compute_potentials = [&] {
        std::vector<bool> seen(nodes, false);
        std::queue<int> q;
        u[0] = 0.0;
        seen[0] = true;
        q.push(0);
        while (!q.empty()) {
            int a = q.front();
            q.pop();
            for (int e : adj[a]) {
                int i = basis[e].i, j = basis[e].j;
                int b = (a == i) ? m + j : i;
                if (seen[b]) continue;
                if (b >= m) v[j] = cost[i][j] - u[i];
                else u[i] = cost[i][j] - v[j];
                seen[b] = true;
                q.push(b);
            }
        }
    };
    auto find_path = [&](int from, int to) {
        std::fill(parent_edge.begin(), parent_edge.end(), -1);
        std::fill(parent_node.begin(), parent_node.end(), -1);
        std::vector<bool> seen(nodes, false);
        std::queue<int> q;
        seen[from] = true;
        q.push(from);
        while (!q.empty()) {
            int a = q.front();
            q.pop();
            if (a == to) return true;
            for (int e : adj[a]) {
                int b = (a == basis[e].i) ? m + basis[e].j : basis[e].i;
                if (seen[b]) continue;
                seen[b] = true;
                parent_edge[b] = e;
                parent_node[b] = a;
                q.push(b);
            }
        }
        return false;
    };

    const double kTol = 1e-12;
    long max_iters = 200L * (m + n) * (m + n) + 1000;
    for (long iter = 0; iter < max_iters; ++iter) {
        rebuild_adj();
        compute_potentials();

        int best_i = -1, best_j = -1;
        double best_red = -kTol;
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) {
                double red = cost[i][j] - u[i] - v[j];
                if (red < best_red) {
                    best_red = red;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        if (best_i < 0) break;  // optimal

        if (!find_path(m + best_j, best_i))
            throw std::runtime_error("w1_distance: basis graph disconnected");
        // cycle = entering arc (+) followed by the basis path back; signs alternate
        std::vector<int> path;
        for (int node = best_i; node != m + best_j; node = parent_node[node])
            path.push_back(parent_edge[node]);

        double theta = kTimeInfinity;
        int leave = -1;
        for (std::size_t k = 0; k < path.size(); ++k) {
            if (k % 2 != 0) continue;  // minus positions
            if (basis[path[k]].flow < theta) {
                theta = basis[path[k]].flow;
                leave = path[k];
            }
        }
        if (leave < 0) throw std::runtime_error("w1_distance: degenerate pivot cycle");
        for (std::size_t k = 0; k < path.size(); ++k)
            basis[path[k]].flow += (k % 2 == 0) ? -theta : theta;
        basis[leave] = {best_i, best_j, theta};
    }

    double total = 0.0;
    for (const BasisCell& c : basis) total += c.flow * cost[c.i][c.j];
    return total;
}

}  // namespace

double w1_distance(const WeightedParticleMeasure& mu, const WeightedParticleMeasure& nu) {
    if (mu.size() == 0 || nu.size() == 0)
        throw std::invalid_argument("w1_distance: empty measure");
    if (mu.dim != nu.dim) throw std::invalid_argument("w1_distance: dimension mismatch");
    if (std::abs(mu.total_weight() - 1.0) > 1e-9 || std::abs(nu.total_weight() - 1.0) > 1e-9)
        throw std::invalid_argument("w1_distance: measures must be normalized");
    if (mu.dim == 1) return w1_line(mu, nu);
    if (mu.size() > kOtAtomCap || nu.size() > kOtAtomCap)
        throw std::invalid_argument(
            "w1_distance: more than 2000 atoms per side; subsample or merge first");
    return w1_simplex(mu, nu);
}

}  // namespace agora
