#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "otlab/geometry.hpp"
#include "otlab/rng.hpp"

namespace otlab {

/// Weighted point cloud. Stands for the data measures mu and lambda as well as
/// quadratures of constant-density measures on balls.
struct DiscreteMeasure {
    std::vector<Vec2> points;
    std::vector<double> weights;
    double total_mass = 0.0;

    size_t size() const { return points.size(); }
    bool empty() const { return points.empty(); }
    void push(const Vec2& p, double w) {
        points.push_back(p);
        weights.push_back(w);
        total_mass += w;
    }
    void recompute_mass();
    /// Throws if a weight is non-positive, a coordinate is non-finite, or the
    /// cached mass is stale beyond 1e-12 relative.
    void validate() const;
};

/// Radial polynomial bump eta(x) = (4/pi) (1-|x|^2)^3 on B_1, scaled to radius
/// R by eta_R = R^-2 eta(./R). C^2, integral one.
struct Mollifier {
    double radius = 1.0;

    explicit Mollifier(double R) : radius(R) {}
    double value(const Vec2& x) const;
    /// Radial profile as a function of r = |x| (2D density).
    double profile(double r) const;
    double hessian_sup() const;  // sup |grad^2 eta_R|, recorded as metadata
};

DiscreteMeasure sample_poisson_process(double intensity, const Ball& ball, uint64_t seed);

DiscreteMeasure perturbed_lattice(double spacing, double amplitude, const Ball& ball, uint64_t seed);

DiscreteMeasure lebesgue_quadrature(const Ball& ball, int cells_per_diameter);

struct Restriction {
    DiscreteMeasure measure;
    double kappa = 0.0;
};

/// mu restricted to the open ball, together with kappa = mass / |ball|.
Restriction restrict_to_ball(const DiscreteMeasure& mu, const Ball& ball);

DiscreteMeasure normalize_to_mass(const DiscreteMeasure& mu, double target_mass);

DiscreteMeasure translate(const DiscreteMeasure& mu, const Vec2& shift);

}  // namespace otlab
