#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "blowzoom/geometry.hpp"
#include "blowzoom/transport.hpp"

namespace blowzoom {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Min-cost max-flow by successive shortest augmenting paths with node
// potentials (dense Dijkstra, implicit complete graph). Node layout:
//   0..m-1 atoms, m = boundary, m+1 = super-source, m+2 = super-sink.
// Capacitated arcs: source->atom (supply), atom->sink (demand), and the
// elastic source->boundary / boundary->sink pair; everything else is
// uncapacitated. Flows are the single source of truth for residuals.
class FlatFlow {
public:
    FlatFlow(int m, std::vector<double> src_cap, std::vector<double> snk_cap, double src_b_cap,
             double b_snk_cap, const std::vector<double>* positions, int dim,
             const std::vector<double>* disposal, const std::vector<double>* fill,
             const std::vector<std::vector<double>>* cost_matrix)
        : m_(m),
          n_(m + 3),
          src_cap_(std::move(src_cap)),
          snk_cap_(std::move(snk_cap)),
          src_b_cap_(src_b_cap),
          b_snk_cap_(b_snk_cap),
          pos_(positions),
          dim_(dim),
          disposal_(disposal),
          fill_(fill),
          cost_matrix_(cost_matrix),
          pi_(n_, 0.0) {}

    double run() {
        const int S = m_ + 1;
        const int T = m_ + 2;
        double total = 0.0;
        std::size_t guard = 0;
        const std::size_t guard_max = 64 * static_cast<std::size_t>(m_) + 256;
        while (true) {
            if (!dijkstra(S, T)) break;
            double push = path_bottleneck(S, T);
            if (!(push > 1e-15)) break;
            total += augment(S, T, push);
            if (++guard > guard_max) throw std::runtime_error("FlatFlow: augmentation guard tripped");
        }
        for (int i = 0; i < m_; ++i) {
            if (src_cap_[i] - flow_on(S, i) > 1e-9 || snk_cap_[i] - flow_on(i, T) > 1e-9)
                throw std::runtime_error("FlatFlow: residual supply or demand left unrouted");
        }
        return total;
    }

private:
    // base cost of the directed arc u -> v, or infinity if absent
    double arc_cost(int u, int v) const {
        const int B = m_, S = m_ + 1, T = m_ + 2;
        if (u == v) return kInf;
        if (u == S) {
            if (v < m_) return src_cap_[v] > 0.0 ? 0.0 : kInf;
            if (v == B) return src_b_cap_ > 0.0 ? 0.0 : kInf;
            return kInf;
        }
        if (v == T) {
            if (u < m_) return snk_cap_[u] > 0.0 ? 0.0 : kInf;
            if (u == B) return b_snk_cap_ > 0.0 ? 0.0 : kInf;
            return kInf;
        }
        if (u == T || v == S) return kInf;
        if (u < m_ && v < m_) return point_cost(u, v);
        if (u < m_ && v == B) return disposal_ ? (*disposal_)[u] : kInf;
        if (u == B && v < m_) return fill_ ? (*fill_)[v] : kInf;
        return kInf;
    }

    double point_cost(int i, int j) const {
        if (cost_matrix_) return (*cost_matrix_)[i][j];
        std::span<const double> a(pos_->data() + static_cast<std::size_t>(i) * dim_, dim_);
        std::span<const double> b(pos_->data() + static_cast<std::size_t>(j) * dim_, dim_);
        return euclid(a, b);
    }

    double arc_capacity(int u, int v) const {
        const int B = m_, S = m_ + 1, T = m_ + 2;
        if (u == S && v < m_) return src_cap_[v];
        if (u == S && v == B) return src_b_cap_;
        if (v == T && u < m_) return snk_cap_[u];
        if (v == T && u == B) return b_snk_cap_;
        if (arc_cost(u, v) < kInf) return kInf;
        return 0.0;
    }

    double flow_on(int u, int v) const {
        auto it = flow_.find(key(u, v));
        return it == flow_.end() ? 0.0 : it->second;
    }

    std::int64_t key(int u, int v) const { return static_cast<std::int64_t>(u) * n_ + v; }

    bool dijkstra(int S, int T) {
        dist_.assign(n_, kInf);
        parent_.assign(n_, -1);
        parent_back_.assign(n_, 0);
        done_.assign(n_, false);
        dist_[S] = 0.0;
        for (int iter = 0; iter < n_; ++iter) {
            int u = -1;
            double best = kInf;
            for (int v = 0; v < n_; ++v)
                if (!done_[v] && dist_[v] < best) { best = dist_[v]; u = v; }
            if (u < 0) break;
            done_[u] = true;
            if (u == T) break;
            for (int v = 0; v < n_; ++v) {
                if (done_[v]) continue;
                // forward residual on arc u->v
                double c = arc_cost(u, v);
                if (c < kInf && arc_capacity(u, v) - flow_on(u, v) > 1e-12) {
                    double rc = std::max(0.0, c + pi_[u] - pi_[v]);
                    if (dist_[u] + rc < dist_[v]) {
                        dist_[v] = dist_[u] + rc;
                        parent_[v] = u;
                        parent_back_[v] = 0;
                    }
                }
                // backward residual: cancel flow on arc v->u
                if (flow_on(v, u) > 1e-12) {
                    double rc = std::max(0.0, -arc_cost(v, u) + pi_[u] - pi_[v]);
                    if (dist_[u] + rc < dist_[v]) {
                        dist_[v] = dist_[u] + rc;
                        parent_[v] = u;
                        parent_back_[v] = 1;
                    }
                }
            }
        }
        if (dist_[T] == kInf) return false;
        for (int v = 0; v < n_; ++v)
            if (dist_[v] < kInf) pi_[v] += std::min(dist_[v], dist_[T]);
        return true;
    }

    double path_bottleneck(int S, int T) const {
        double b = kInf;
        for (int v = T; v != S; v = parent_[v]) {
            int u = parent_[v];
            if (u < 0) return 0.0;
            double cap = parent_back_[v] ? flow_on(v, u) : arc_capacity(u, v) - flow_on(u, v);
            b = std::min(b, cap);
        }
        return b;
    }

    double augment(int S, int T, double push) {
        double cost = 0.0;
        for (int v = T; v != S; v = parent_[v]) {
            int u = parent_[v];
            if (parent_back_[v]) {
                flow_[key(v, u)] -= push;
                cost -= push * arc_cost(v, u);
            } else {
                flow_[key(u, v)] += push;
                cost += push * arc_cost(u, v);
            }
        }
        return cost;
    }

    int m_, n_;
    std::vector<double> src_cap_, snk_cap_;
    double src_b_cap_, b_snk_cap_;
    const std::vector<double>* pos_;
    int dim_;
    const std::vector<double>* disposal_;
    const std::vector<double>* fill_;
    const std::vector<std::vector<double>>* cost_matrix_;
    std::vector<double> pi_, dist_;
    std::vector<int> parent_;
    std::vector<char> parent_back_;
    std::vector<char> done_;
    std::unordered_map<std::int64_t, double> flow_;
};

}  // namespace

double ssp_flat_optimum(int dim, std::span<const double> positions, std::span<const double> charges,
                        std::span<const double> disposal, std::span<const double> fill) {
    const int m = static_cast<int>(charges.size());
    if (positions.size() != static_cast<std::size_t>(m) * dim)
        throw std::invalid_argument("ssp_flat_optimum: positions size mismatch");
    if (disposal.size() != charges.size() || fill.size() != charges.size())
        throw std::invalid_argument("ssp_flat_optimum: bound size mismatch");
    if (m == 0) return 0.0;

    std::vector<double> src(m, 0.0), snk(m, 0.0);
    double pos_total = 0.0, neg_total = 0.0;
    for (int i = 0; i < m; ++i) {
        if (charges[i] > 0.0) { src[i] = charges[i]; pos_total += charges[i]; }
        else { snk[i] = -charges[i]; neg_total -= charges[i]; }
    }
    std::vector<double> p(positions.begin(), positions.end());
    std::vector<double> dis(disposal.begin(), disposal.end());
    std::vector<double> fil(fill.begin(), fill.end());
    FlatFlow ff(m, std::move(src), std::move(snk), neg_total, pos_total, &p, dim, &dis, &fil, nullptr);
    return ff.run();
}

double ssp_assignment(std::span<const double> supply, std::span<const double> demand,
                      const std::vector<std::vector<double>>& cost) {
    const int ns = static_cast<int>(supply.size()), nd = static_cast<int>(demand.size());
    double st = 0.0, dt = 0.0;
    for (double v : supply) st += v;
    for (double v : demand) dt += v;
    if (std::abs(st - dt) > 1e-9 * std::max(1.0, st))
        throw std::invalid_argument("ssp_assignment: unbalanced masses");
    // embed on ns + nd points with an explicit cost matrix and no boundary arcs
    const int m = ns + nd;
    std::vector<std::vector<double>> full(m, std::vector<double>(m, kInf));
    for (int i = 0; i < ns; ++i)
        for (int j = 0; j < nd; ++j) {
            full[i][ns + j] = cost[i][j];
            full[ns + j][i] = cost[i][j];
        }
    std::vector<double> src(m, 0.0), snk(m, 0.0);
    for (int i = 0; i < ns; ++i) src[i] = supply[i];
    for (int j = 0; j < nd; ++j) snk[ns + j] = demand[j];
    FlatFlow ff(m, std::move(src), std::move(snk), 0.0, 0.0, nullptr, 0, nullptr, nullptr, &full);
    return ff.run();
}

}  // namespace blowzoom
