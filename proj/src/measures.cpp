#include "otlab/measures.hpp"

#include <cmath>
#include <stdexcept>

namespace otlab {

void DiscreteMeasure::recompute_mass() {
    double s = 0.0;
    for (double w : weights) s += w;
    total_mass = s;
}

void DiscreteMeasure::validate() const {
    if (points.size() != weights.size())
        throw std::logic_error("measure: points/weights size mismatch");
    double s = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
        if (!(weights[i] > 0.0)) throw std::invalid_argument("measure: non-positive weight");
        if (!std::isfinite(points[i].x) || !std::isfinite(points[i].y))
            throw std::invalid_argument("measure: non-finite point");
        s += weights[i];
    }
    if (std::abs(s - total_mass) > 1e-12 * std::max(1.0, std::abs(s)))
        throw std::logic_error("measure: stale total_mass");
}

double Mollifier::profile(double r) const {
    const double s = r / radius;
    if (s >= 1.0) return 0.0;
    const double q = 1.0 - s * s;
    return (4.0 / M_PI) * q * q * q / (radius * radius);
}

double Mollifier::value(const Vec2& x) const { return profile(norm(x)); }

double Mollifier::hessian_sup() const {
    // eta(x) = (4/pi)(1-r^2)^3 on the unit ball; scan |grad^2| on a fine radial
    // grid (radial profile, so the Hessian eigenvalues are f''(r) and f'(r)/r).
    double sup = 0.0;
    const int N = 4096;
    for (int i = 0; i <= N; ++i) {
        const double r = static_cast<double>(i) / N;
        const double q = 1.0 - r * r;
        if (q <= 0.0) continue;
        const double fpp = (4.0 / M_PI) * (-6.0 * q * q + 24.0 * r * r * q);
        const double fp_over_r = (4.0 / M_PI) * (-6.0 * q * q);
        sup = std::max(sup, std::max(std::abs(fpp), std::abs(fp_over_r)));
    }
    return sup / (radius * radius * radius * radius);
}

DiscreteMeasure sample_poisson_process(double intensity, const Ball& ball, uint64_t seed) {
    if (!(intensity > 0.0)) throw std::invalid_argument("sample_poisson_process: intensity must be positive");
    SplitRng rng = SplitRng(seed).stream("poisson_process");
    const uint64_t n = rng.poisson(intensity * ball.area());
    DiscreteMeasure mu;
    mu.points.reserve(n);
    mu.weights.reserve(n);
    uint64_t placed = 0;
    while (placed < n) {
        const double x = rng.uniform(-ball.radius, ball.radius);
        const double y = rng.uniform(-ball.radius, ball.radius);
        if (x * x + y * y < ball.radius * ball.radius) {
            mu.push({ball.center.x + x, ball.center.y + y}, 1.0);
            ++placed;
        }
    }
    return mu;
}

DiscreteMeasure perturbed_lattice(double spacing, double amplitude, const Ball& ball, uint64_t seed) {
    if (!(spacing > 0.0)) throw std::invalid_argument("perturbed_lattice: spacing must be positive");
    if (spacing >= ball.radius) throw std::invalid_argument("degenerate lattice");
    if (amplitude < 0.0 || amplitude > 0.5 * spacing)
        throw std::invalid_argument("perturbed_lattice: amplitude out of [0, spacing/2]");
    SplitRng rng = SplitRng(seed).stream("perturbed_lattice");
    DiscreteMeasure mu;
    const long k_max = static_cast<long>(std::floor(ball.radius / spacing)) + 1;
    for (long i = -k_max; i <= k_max; ++i) {
        for (long j = -k_max; j <= k_max; ++j) {
            const Vec2 site{ball.center.x + i * spacing, ball.center.y + j * spacing};
            if (!ball.contains_open(site)) continue;
            const Vec2 jitter{rng.uniform(-amplitude, amplitude), rng.uniform(-amplitude, amplitude)};
            mu.push(site + jitter, spacing * spacing);
        }
    }
    return mu;
}

DiscreteMeasure lebesgue_quadrature(const Ball& ball, int cells_per_diameter) {
    if (cells_per_diameter < 8)
        throw std::invalid_argument("lebesgue_quadrature: cells_per_diameter must be >= 8");
    const double R = ball.radius;
    const double h = 2.0 * R / cells_per_diameter;
    DiscreteMeasure q;
    for (int i = 0; i < cells_per_diameter; ++i) {
        const double x0 = ball.center.x - R + i * h;
        for (int j = 0; j < cells_per_diameter; ++j) {
            const double y0 = ball.center.y - R + j * h;
            const ClippedCell cell = clip_cell_to_disk(x0, y0, x0 + h, y0 + h, ball);
            if (cell.area > 0.0) q.push(cell.centroid, cell.area);
        }
    }
    return q;
}

Restriction restrict_to_ball(const DiscreteMeasure& mu, const Ball& ball) {
    Restriction out;
    for (size_t i = 0; i < mu.size(); ++i)
        if (ball.contains_open(mu.points[i])) out.measure.push(mu.points[i], mu.weights[i]);
    out.kappa = out.measure.total_mass / ball.area();
    return out;
}

DiscreteMeasure normalize_to_mass(const DiscreteMeasure& mu, double target_mass) {
    if (mu.empty()) throw std::invalid_argument("normalize_to_mass: empty measure");
    if (!(target_mass > 0.0)) throw std::invalid_argument("normalize_to_mass: target mass must be positive");
    DiscreteMeasure out = mu;
    const double s = target_mass / mu.total_mass;
    for (double& w : out.weights) w *= s;
    out.recompute_mass();
    return out;
}

DiscreteMeasure translate(const DiscreteMeasure& mu, const Vec2& shift) {
    DiscreteMeasure out = mu;
    for (Vec2& p : out.points) p += shift;
    return out;
}

}  // namespace otlab
