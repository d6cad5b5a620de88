#include "otlab/geometry.hpp"

#include <array>
#include <vector>

namespace otlab {

namespace {

struct BoundaryPiece {
    Vec2 a, b;           // straight piece from a to b, inside the disk
    bool entry_at_a;     // a lies on the circle (trajectory enters the disk here)
    bool exit_at_b;      // b lies on the circle (leaves the disk here)
};

double wrap_ccw(double dtheta) {
    while (dtheta < 0.0) dtheta += 2.0 * M_PI;
    while (dtheta >= 2.0 * M_PI) dtheta -= 2.0 * M_PI;
    return dtheta;
}

}  // namespace

ClippedCell clip_cell_to_disk(double x0, double y0, double x1, double y1, const Ball& ball) {
    const double R = ball.radius;
    const double R2 = R * R;
    // Work in coordinates centered at the disk center.
    const Vec2 c = ball.center;
    const std::array<Vec2, 4> corner = {Vec2{x0 - c.x, y0 - c.y}, Vec2{x1 - c.x, y0 - c.y},
                                        Vec2{x1 - c.x, y1 - c.y}, Vec2{x0 - c.x, y1 - c.y}};

    std::vector<BoundaryPiece> pieces;
    int corners_inside = 0;
    for (const Vec2& v : corner)
        if (norm2(v) <= R2) ++corners_inside;

    for (int e = 0; e < 4; ++e) {
        const Vec2 A = corner[e];
        const Vec2 B = corner[(e + 1) % 4];
        const Vec2 d = B - A;
        const double qa = norm2(d);
        const double qb = 2.0 * dot(A, d);
        const double qc = norm2(A) - R2;
        // |A + t d|^2 <= R^2 on [t_lo, t_hi]
        double t_lo = 0.0, t_hi = 1.0;
        const double disc = qb * qb - 4.0 * qa * qc;
        if (disc <= 0.0) continue;  // edge misses the open disk (tangency has measure zero)
        const double sq = std::sqrt(disc);
        const double r1 = (-qb - sq) / (2.0 * qa);
        const double r2 = (-qb + sq) / (2.0 * qa);
        t_lo = std::max(0.0, r1);
        t_hi = std::min(1.0, r2);
        if (t_hi <= t_lo) continue;
        BoundaryPiece p;
        p.a = A + t_lo * d;
        p.b = A + t_hi * d;
        // A piece endpoint is a circle crossing when it sits on the circle;
        // this also catches cell corners that land exactly on the circle.
        p.entry_at_a = t_lo > 0.0 || norm2(p.a) >= R2 * (1.0 - 1e-12);
        p.exit_at_b = t_hi < 1.0 || norm2(p.b) >= R2 * (1.0 - 1e-12);
        pieces.push_back(p);
    }

    ClippedCell out;
    if (pieces.empty()) {
        if (corners_inside == 4) {
            out.area = (x1 - x0) * (y1 - y0);
            out.centroid = {0.5 * (x0 + x1), 0.5 * (y0 + y1)};
            return out;
        }
        // No edge touches the disk interior: either the disk is wholly inside
        // the cell or the two sets are disjoint.
        if (c.x > x0 && c.x < x1 && c.y > y0 && c.y < y1) {
            out.area = M_PI * R2;
            out.centroid = c;
        }
        return out;
    }

    // Green's theorem with area = (1/2) oint (x dy - y dx), Mx = oint x^2/2 dy,
    // My = -oint y^2/2 dx; the same forms are used for straight pieces and arcs
    // so an open mix of both still sums to the exact region integrals.
    double area = 0.0, mx = 0.0, my = 0.0;
    auto add_straight = [&](const Vec2& p, const Vec2& q) {
        const double dx = q.x - p.x, dy = q.y - p.y;
        area += 0.5 * cross(p, q);
        mx += dy * (p.x * p.x + p.x * q.x + q.x * q.x) / 6.0;
        my -= dx * (p.y * p.y + p.y * q.y + q.y * q.y) / 6.0;
    };
    auto add_arc = [&](double th_from, double th_to) {
        const double dth = wrap_ccw(th_to - th_from);
        area += 0.5 * R2 * dth;
        auto icos3 = [](double t) { return std::sin(t) - std::pow(std::sin(t), 3) / 3.0; };
        auto isin3 = [](double t) { return -std::cos(t) + std::pow(std::cos(t), 3) / 3.0; };
        const double th2 = th_from + dth;
        mx += 0.5 * R2 * R * (icos3(th2) - icos3(th_from));
        my += 0.5 * R2 * R * (isin3(th2) - isin3(th_from));
    };

    const size_t n = pieces.size();
    for (size_t i = 0; i < n; ++i) {
        add_straight(pieces[i].a, pieces[i].b);
        if (pieces[i].exit_at_b) {
            // The region boundary follows the circle (counterclockwise) until the
            // next entry crossing in perimeter order.
            for (size_t k = 1; k <= n; ++k) {
                const BoundaryPiece& nx = pieces[(i + k) % n];
                if (nx.entry_at_a) {
                    add_arc(angle_of(pieces[i].b), angle_of(nx.a));
                    break;
                }
            }
        }
    }

    if (area <= 0.0) return out;
    out.area = area;
    out.centroid = {mx / area + c.x, my / area + c.y};
    return out;
}

}  // namespace otlab
