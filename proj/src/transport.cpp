#include "otlab/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace otlab {

double Coupling::cost() const {
    double s = 0.0;
    for (const Pair& p : pairs) s += p.m * norm2(p.x - p.y);
    return s;
}

DiscreteMeasure Coupling::first_marginal() const {
    DiscreteMeasure mu;
    for (const Pair& p : pairs) mu.push(p.x, p.m);
    return mu;
}

DiscreteMeasure Coupling::second_marginal() const {
    DiscreteMeasure nu;
    for (const Pair& p : pairs) nu.push(p.y, p.m);
    return nu;
}

namespace {

double sq_dist(const Vec2& a, const Vec2& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

/// Primal network simplex for the dense uncapacitated transportation problem.
/// Costs are evaluated on the fly (squared distances), so memory stays O(n+m).
/// Spanning-tree basis rooted at an artificial node; block pivoting.
class DenseTransportSimplex {
public:
    DenseTransportSimplex(const std::vector<Vec2>& src, const std::vector<double>& supply,
                          const std::vector<Vec2>& snk, const std::vector<double>& demand)
        : src_(src), snk_(snk), n_(static_cast<int>(src.size())), m_(static_cast<int>(snk.size())) {
        V_ = n_ + m_ + 1;
        root_ = n_ + m_;
        arc_count_ = static_cast<long long>(n_) * m_;
        block_ = std::max<long long>(64, static_cast<long long>(std::sqrt(static_cast<double>(arc_count_))));

        // Upper bound on any arc cost from bounding boxes.
        double lox = src_[0].x, hix = src_[0].x, loy = src_[0].y, hiy = src_[0].y;
        auto extend = [&](const Vec2& p) {
            lox = std::min(lox, p.x);
            hix = std::max(hix, p.x);
            loy = std::min(loy, p.y);
            hiy = std::max(hiy, p.y);
        };
        for (const Vec2& p : src_) extend(p);
        for (const Vec2& p : snk_) extend(p);
        scale_ = (hix - lox) * (hix - lox) + (hiy - loy) * (hiy - loy);
        if (scale_ <= 0.0) scale_ = 1.0;
        eps_ = 1e-13 * scale_;
        art_cost_ = 2.0 * scale_ + 1.0;

        pi_.assign(V_, 0.0);
        parent_.assign(V_, -1);
        dir_.assign(V_, 0);
        flow_.assign(V_, 0.0);
        depth_.assign(V_, 0);
        children_.assign(V_, {});
        pos_in_parent_.assign(V_, -1);
        children_[root_].reserve(V_ - 1);
        for (int i = 0; i < n_; ++i) {
            pi_[i] = art_cost_;
            attach(i, root_, +1, supply[i]);  // artificial arc source -> root
            depth_[i] = 1;
            total_supply_ += supply[i];
        }
        for (int j = 0; j < m_; ++j) {
            const int v = n_ + j;
            pi_[v] = -art_cost_;
            attach(v, root_, -1, demand[j]);  // artificial arc root -> sink
            depth_[v] = 1;
        }
    }

    double arc_cost(int i, int j) const { return sq_dist(src_[i], snk_[j]); }

    // reduced cost of real arc i -> sink j
    double reduced(int i, int j) const { return arc_cost(i, j) - pi_[i] + pi_[n_ + j]; }

    void solve() {
        const long long max_pivots = 2000 + 300LL * V_;
        long long next_arc = 0;
        while (true) {
            // Block search for the entering arc.
            long long best_arc = -1;
            double best_rc = -eps_;
            long long scanned = 0;
            while (scanned < arc_count_) {
                const long long end = std::min(next_arc + block_, arc_count_);
                int i = static_cast<int>(next_arc / m_);
                int j = static_cast<int>(next_arc % m_);
                double pi_i = pi_[i];
                for (long long a = next_arc; a < end; ++a) {
                    const double rc = arc_cost(i, j) - pi_i + pi_[n_ + j];
                    if (rc < best_rc) {
                        best_rc = rc;
                        best_arc = a;
                    }
                    if (++j == m_) {
                        j = 0;
                        if (++i < n_) pi_i = pi_[i];
                    }
                }
                scanned += end - next_arc;
                next_arc = end == arc_count_ ? 0 : end;
                if (best_arc >= 0) break;
            }
            if (best_arc < 0) break;  // optimal
            if (++iterations_ > max_pivots)
                throw std::runtime_error("network simplex: pivot limit exceeded");
            pivot(static_cast<int>(best_arc / m_), n_ + static_cast<int>(best_arc % m_), best_rc);
        }
        for (int v = 0; v < n_ + m_; ++v)
            if (parent_[v] == root_ && flow_[v] > 1e-6 * total_supply_)
                throw std::runtime_error("network simplex: infeasible instance");
    }

    long iterations() const { return static_cast<long>(iterations_); }

    double certificate() const {
        double worst = 0.0;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < m_; ++j) worst = std::min(worst, reduced(i, j));
        return worst;
    }

    /// Basis pairs (source index, sink index, flow) with positive flow.
    std::vector<std::tuple<int, int, double>> basis_pairs() const {
        std::vector<std::tuple<int, int, double>> out;
        for (int v = 0; v < n_ + m_; ++v) {
            const int p = parent_[v];
            if (p == root_ || p < 0) continue;
            if (flow_[v] <= 0.0) continue;
            if (v < n_)
                out.emplace_back(v, p - n_, flow_[v]);
            else
                out.emplace_back(p, v - n_, flow_[v]);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    void pivot(int s, int t, double rc) {
        // Entering arc s -> t (s source node, t sink node). The cycle is the
        // entering arc plus the tree path t .. LCA .. s.
        int a = s, b = t;
        while (a != b) {
            if (depth_[a] > depth_[b])
                a = parent_[a];
            else
                b = parent_[b];
        }
        const int lca = a;

        // Min-ratio over flow-decreasing edges of the cycle.
        double delta = std::numeric_limits<double>::infinity();
        int leave = -1;
        bool leave_on_s_side = false;
        for (int v = s; v != lca; v = parent_[v]) {
            // traversed parent -> v; decreases if arc oriented v -> parent
            if (dir_[v] == +1 && flow_[v] < delta) {
                delta = flow_[v];
                leave = v;
                leave_on_s_side = true;
            }
        }
        for (int v = t; v != lca; v = parent_[v]) {
            // traversed v -> parent; decreases if arc oriented parent -> v
            if (dir_[v] == -1 && flow_[v] < delta) {
                delta = flow_[v];
                leave = v;
                leave_on_s_side = false;
            }
        }
        if (leave < 0) throw std::runtime_error("network simplex: unbounded pivot");

        // Apply the flow change around the cycle.
        for (int v = s; v != lca; v = parent_[v]) flow_[v] += (dir_[v] == +1) ? -delta : +delta;
        for (int v = t; v != lca; v = parent_[v]) flow_[v] += (dir_[v] == -1) ? -delta : +delta;

        // Re-hang the component cut off by the leaving edge.
        if (leave_on_s_side)
            rehang(s, leave, t, +1, delta, rc);
        else
            rehang(t, leave, s, -1, delta, -rc);
    }

    // Re-root the subtree that (before the cut) hangs below `leave` at node
    // `new_root`, then attach new_root under `attach_to` with the entering arc.
    // All potentials in the component shift by `pi_shift`.
    void rehang(int new_root, int leave, int attach_to, int8_t enter_dir, double enter_flow,
                double pi_shift) {
        // Chain new_root -> ... -> leave.
        chain_.clear();
        for (int v = new_root;; v = parent_[v]) {
            chain_.push_back(v);
            if (v == leave) break;
        }
        edge_dir_.clear();
        edge_flow_.clear();
        for (size_t i = 0; i + 1 < chain_.size(); ++i) {
            edge_dir_.push_back(dir_[chain_[i]]);
            edge_flow_.push_back(flow_[chain_[i]]);
        }
        // Detach `leave` from the kept side, re-root the chain at new_root and
        // hook it up through the entering arc.
        detach(leave);
        detach(new_root);
        attach(new_root, attach_to, enter_dir, enter_flow);
        for (size_t i = 1; i < chain_.size(); ++i) {
            const int v = chain_[i];
            if (parent_[v] >= 0) detach(v);
            attach(v, chain_[i - 1], static_cast<int8_t>(-edge_dir_[i - 1]), edge_flow_[i - 1]);
        }
        // Shift potentials and recompute depths over the moved component.
        stack_.clear();
        stack_.push_back(new_root);
        depth_[new_root] = depth_[attach_to] + 1;
        while (!stack_.empty()) {
            const int v = stack_.back();
            stack_.pop_back();
            pi_[v] += pi_shift;
            for (int c : children_[v]) {
                depth_[c] = depth_[v] + 1;
                stack_.push_back(c);
            }
        }
    }

    void detach(int v) {
        const int p = parent_[v];
        if (p < 0) return;
        auto& ch = children_[p];
        const int idx = pos_in_parent_[v];
        ch[idx] = ch.back();
        pos_in_parent_[ch[idx]] = idx;
        ch.pop_back();
        parent_[v] = -1;
    }

    void attach(int v, int p, int8_t d, double f) {
        parent_[v] = p;
        dir_[v] = d;
        flow_[v] = f;
        pos_in_parent_[v] = static_cast<int>(children_[p].size());
        children_[p].push_back(v);
    }

    const std::vector<Vec2>& src_;
    const std::vector<Vec2>& snk_;
    int n_, m_, V_, root_;
    long long arc_count_, block_;
    double scale_ = 1.0, eps_ = 0.0, art_cost_ = 0.0, total_supply_ = 0.0;
    long long iterations_ = 0;

    std::vector<double> pi_, flow_;
    std::vector<int> parent_, depth_, pos_in_parent_;
    std::vector<int8_t> dir_;
    std::vector<std::vector<int>> children_;
    std::vector<int> chain_, stack_;
    std::vector<int8_t> edge_dir_;
    std::vector<double> edge_flow_;
};

bool uniform_weights(const DiscreteMeasure& mu) {
    if (mu.empty()) return false;
    const double w = mu.weights[0];
    for (double x : mu.weights)
        if (std::abs(x - w) > 1e-12 * w) return false;
    return true;
}

}  // namespace

std::vector<int> solve_assignment(int n, const std::function<double(int, int)>& cost) {
    const double INF = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<int> p(n + 1, -1), way(n + 1, n);
    for (int i = 0; i < n; ++i) {
        p[n] = i;
        int j0 = n;
        std::fill(minv.begin(), minv.end(), INF);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = INF;
            int j1 = -1;
            for (int j = 0; j < n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0, j) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            if (j1 < 0) throw std::runtime_error("assignment: no augmenting path");
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != -1);
        while (j0 != n) {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        }
    }
    std::vector<int> row_to_col(n, -1);
    for (int j = 0; j < n; ++j)
        if (p[j] >= 0) row_to_col[p[j]] = j;
    return row_to_col;
}

std::pair<Coupling, TransportReport> solve_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                                 const TransportOptions& opts) {
    if (mu.empty() || nu.empty()) throw std::invalid_argument("solve_exact: empty measure");
    const double mass_scale = std::max(mu.total_mass, nu.total_mass);
    if (std::abs(mu.total_mass - nu.total_mass) > 1e-9 * mass_scale)
        throw std::invalid_argument("unbalanced");
    if (static_cast<long long>(mu.size()) * static_cast<long long>(nu.size()) > opts.max_cost_entries)
        throw std::invalid_argument("instance too large");

    Coupling coupling;
    TransportReport report;

    const int n = static_cast<int>(mu.size());
    if (n == static_cast<int>(nu.size()) && n <= opts.assignment_size_cap && uniform_weights(mu) &&
        uniform_weights(nu) && std::abs(mu.weights[0] - nu.weights[0]) <= 1e-9 * mu.weights[0]) {
        const double w = mu.weights[0];
        auto cost = [&](int i, int j) { return sq_dist(mu.points[i], nu.points[j]); };
        const std::vector<int> match = solve_assignment(n, cost);
        double total = 0.0;
        for (int i = 0; i < n; ++i) total += cost(i, match[i]);
        for (int i = 0; i < n; ++i) coupling.push(mu.points[i], nu.points[match[i]], w);
        report.cost = w * total;
        report.solver_iterations = n;
        report.worst_reduced_cost = 0.0;
        return {coupling, report};
    }

    // Scale the target weights so both sides balance exactly.
    std::vector<double> demand = nu.weights;
    const double s = mu.total_mass / nu.total_mass;
    for (double& d : demand) d *= s;

    DenseTransportSimplex simplex(mu.points, mu.weights, nu.points, demand);
    simplex.solve();
    double total = 0.0;
    for (const auto& [i, j, f] : simplex.basis_pairs()) {
        coupling.push(mu.points[i], nu.points[j], f);
        total += f * sq_dist(mu.points[i], nu.points[j]);
    }
    report.cost = total;
    report.solver_iterations = simplex.iterations();
    report.worst_reduced_cost = simplex.certificate();
    return {coupling, report};
}

double brute_force_oracle(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
    const size_t n = mu.size();
    if (n != nu.size() || n == 0) throw std::invalid_argument("brute_force_oracle: equal atom counts required");
    if (n > 8) throw std::invalid_argument("brute_force_oracle: size > 8");
    for (double w : mu.weights)
        if (std::abs(w - 1.0) > 1e-12) throw std::invalid_argument("brute_force_oracle: unit masses required");
    for (double w : nu.weights)
        if (std::abs(w - 1.0) > 1e-12) throw std::invalid_argument("brute_force_oracle: unit masses required");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double c = 0.0;
        for (size_t i = 0; i < n; ++i) c += sq_dist(mu.points[i], nu.points[perm[i]]);
        if (c < best) best = c;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

LocalizedW2 wasserstein_sq_localized(const DiscreteMeasure& mu, const Ball& ball, int cells_per_diameter,
                                     const TransportOptions& opts) {
    const Restriction r = restrict_to_ball(mu, ball);
    if (r.measure.empty()) throw std::invalid_argument("wasserstein_sq_localized: empty restriction");
    DiscreteMeasure q = lebesgue_quadrature(ball, cells_per_diameter);
    // kappa * quadrature, rescaled to balance exactly.
    const double s = r.measure.total_mass / q.total_mass;
    for (double& w : q.weights) w *= s;
    q.recompute_mass();
    auto [coupling, report] = solve_exact(r.measure, q, opts);
    (void)coupling;
    return {report.cost, r.kappa};
}

TransportReport check_monotone(const Coupling& coupling, double tol, uint64_t seed) {
    TransportReport rep;
    rep.cost = coupling.cost();
    const size_t n = coupling.size();
    if (n < 2) return rep;

    double diam2 = 0.0;
    {
        double lox = coupling.pairs[0].x.x, hix = lox, loy = coupling.pairs[0].x.y, hiy = loy;
        for (const auto& p : coupling.pairs) {
            for (const Vec2& v : {p.x, p.y}) {
                lox = std::min(lox, v.x);
                hix = std::max(hix, v.x);
                loy = std::min(loy, v.y);
                hiy = std::max(hiy, v.y);
            }
        }
        diam2 = (hix - lox) * (hix - lox) + (hiy - loy) * (hiy - loy);
    }
    if (tol < 0.0) tol = 1e-9 * diam2;
    (void)tol;

    double worst_pair = 0.0;
    double worst_cycle = 0.0;
    auto pair_defect = [&](size_t i, size_t j) {
        const auto& a = coupling.pairs[i];
        const auto& b = coupling.pairs[j];
        return dot(a.y - b.y, a.x - b.x);
    };
    auto cycle_defect = [&](size_t i, size_t j, size_t k) {
        // cost of rotating targets i->j->k->i minus cost of the identity pairing
        const auto& a = coupling.pairs[i];
        const auto& b = coupling.pairs[j];
        const auto& c = coupling.pairs[k];
        const double rotated = norm2(a.x - b.y) + norm2(b.x - c.y) + norm2(c.x - a.y);
        const double current = norm2(a.x - a.y) + norm2(b.x - b.y) + norm2(c.x - c.y);
        return rotated - current;
    };

    if (n <= 2000) {
        for (size_t i = 0; i < n; ++i)
            for (size_t j = i + 1; j < n; ++j) worst_pair = std::min(worst_pair, pair_defect(i, j));
        SplitRng rng = SplitRng(seed).stream("monotone_cycles");
        const size_t samples = std::min<size_t>(n * n, 200000);
        for (size_t t = 0; t < samples; ++t) {
            const size_t i = rng.next_u64() % n;
            const size_t j = rng.next_u64() % n;
            const size_t k = rng.next_u64() % n;
            if (i == j || j == k || i == k) continue;
            worst_cycle = std::min(worst_cycle, cycle_defect(i, j, k));
        }
    } else {
        SplitRng rng = SplitRng(seed).stream("monotone_pairs");
        for (size_t t = 0; t < 1000000; ++t) {
            const size_t i = rng.next_u64() % n;
            const size_t j = rng.next_u64() % n;
            if (i == j) continue;
            worst_pair = std::min(worst_pair, pair_defect(i, j));
        }
        SplitRng rng3 = SplitRng(seed).stream("monotone_cycles");
        for (size_t t = 0; t < 1000000; ++t) {
            const size_t i = rng3.next_u64() % n;
            const size_t j = rng3.next_u64() % n;
            const size_t k = rng3.next_u64() % n;
            if (i == j || j == k || i == k) continue;
            worst_cycle = std::min(worst_cycle, cycle_defect(i, j, k));
        }
    }
    rep.monotonicity_violation = worst_pair;
    rep.cycle_violation = worst_cycle;
    return rep;
}

double circle_wasserstein_sq(const std::vector<double>& f, const std::vector<double>& g, double radius) {
    if (f.size() != g.size() || f.empty())
        throw std::invalid_argument("circle_wasserstein_sq: bin count mismatch");
    const int n = static_cast<int>(f.size());
    double sf = 0.0, sg = 0.0;
    for (double x : f) sf += x;
    for (double x : g) sg += x;
    const double scale = std::max(std::abs(sf), std::abs(sg));
    if (scale == 0.0) return 0.0;
    if (std::abs(sf - sg) > 1e-9 * scale) throw std::invalid_argument("circle_wasserstein_sq: mass mismatch");

    struct Atom {
        int bin;
        double mass;
    };
    std::vector<Atom> fa, ga;
    for (int k = 0; k < n; ++k)
        if (f[k] != 0.0) fa.push_back({k, f[k]});
    const double rescale = sf / sg;
    for (int k = 0; k < n; ++k)
        if (g[k] != 0.0) ga.push_back({k, g[k] * rescale});
    if (fa.empty() || ga.empty()) return 0.0;

    const double dtheta = 2.0 * M_PI / n;
    double best = std::numeric_limits<double>::infinity();
    for (int cut = 0; cut < n; ++cut) {
        auto pos = [&](int bin) {
            const int k = bin - cut < 0 ? bin - cut + n : bin - cut;
            return (k + 0.5) * dtheta * radius;
        };
        // First atom at or after the cut.
        auto start = [&](const std::vector<Atom>& v) {
            size_t i = 0;
            while (i < v.size() && v[i].bin < cut) ++i;
            return i % v.size();
        };
        size_t i = start(fa), j = start(ga);
        double ri = fa[i].mass, rj = ga[j].mass;
        size_t taken_i = 0, taken_j = 0;
        double cost = 0.0;
        while (taken_i < fa.size() && taken_j < ga.size()) {
            const double d = pos(fa[i].bin) - pos(ga[j].bin);
            const double dm = std::min(ri, rj);
            cost += dm * d * d;
            ri -= dm;
            rj -= dm;
            if (ri <= 0.0) {
                ++taken_i;
                i = (i + 1) % fa.size();
                ri = fa[i].mass;
            }
            if (rj <= 0.0) {
                ++taken_j;
                j = (j + 1) % ga.size();
                rj = ga[j].mass;
            }
            if (cost >= best) break;
        }
        best = std::min(best, cost);
    }
    return best;
}

}  // namespace otlab
