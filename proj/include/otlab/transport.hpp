#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "otlab/measures.hpp"

namespace otlab {

/// Transference plan between two discrete measures.
struct Coupling {
    struct Pair {
        Vec2 x;    // source point
        Vec2 y;    // target point
        double m;  // mass, > 0
    };
    std::vector<Pair> pairs;
    double source_mass = 0.0;
    double target_mass = 0.0;

    size_t size() const { return pairs.size(); }
    void push(const Vec2& x, const Vec2& y, double m) {
        pairs.push_back({x, y, m});
        source_mass += m;
        target_mass += m;
    }
    double cost() const;  // sum m |x-y|^2
    DiscreteMeasure first_marginal() const;
    DiscreteMeasure second_marginal() const;
};

struct TransportReport {
    double cost = 0.0;
    double monotonicity_violation = 0.0;  // worst pairwise defect, <= 0
    double cycle_violation = 0.0;         // worst sampled 3-cycle defect, <= 0
    long solver_iterations = 0;
    double worst_reduced_cost = 0.0;  // dual feasibility certificate, >= -tol
};

struct TransportOptions {
    // Largest dense instance (source count * target count) the solver accepts.
    long long max_cost_entries = 60'000'000;
    // Assignment route is used for equal unit-mass instances up to this size.
    int assignment_size_cap = 1024;
};

/// Exact quadratic-cost optimal transport. Network simplex on the dense
/// bipartite instance; equal-count equal-mass instances route through a
/// shortest-augmenting-path assignment solver.
std::pair<Coupling, TransportReport> solve_exact(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                                 const TransportOptions& opts = {});

/// Minimum assignment cost over all permutations; <= 8 unit-mass atoms each.
double brute_force_oracle(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

struct LocalizedW2 {
    double w2 = 0.0;
    double kappa = 0.0;
};

/// W^2(mu restricted to ball, kappa * Lebesgue quadrature of ball).
LocalizedW2 wasserstein_sq_localized(const DiscreteMeasure& mu, const Ball& ball, int cells_per_diameter,
                                     const TransportOptions& opts = {});

/// Pairwise monotonicity defect min (y-y')*(x-x') plus sampled 3-cycle defects.
TransportReport check_monotone(const Coupling& coupling, double tol = -1.0, uint64_t seed = 0);

/// Squared Wasserstein distance on the circle of radius R between two angular
/// histograms (same bin count, equal mass). Bin k covers [k,k+1) * 2*pi/n with
/// its mass treated as an atom at the bin center; cost is the squared geodesic
/// arc length. Minimizes the unrolled 1D matching cost over all bin-boundary
/// cut positions.
double circle_wasserstein_sq(const std::vector<double>& f, const std::vector<double>& g, double radius);

/// Hungarian assignment on an n x n cost callback; returns row -> column.
std::vector<int> solve_assignment(int n, const std::function<double(int, int)>& cost);

}  // namespace otlab
