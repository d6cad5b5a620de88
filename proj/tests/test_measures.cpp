#include <cmath>

#include "doctest.h"
#include "otlab/measures.hpp"

using namespace otlab;

TEST_CASE("poisson process: mean count matches the law over many seeds") {
    const Ball ball({0, 0}, 10.0);
    const double lambda = ball.area();  // intensity 1
    double total = 0.0;
    const int reps = 1000;
    for (int s = 0; s < reps; ++s) total += static_cast<double>(sample_poisson_process(1.0, ball, 7 + s).size());
    const double mean = total / reps;
    // 3-sigma band for the mean of 1000 Poisson(lambda) draws would be much
    // tighter; the spec band is 3*sqrt(lambda) around lambda.
    CHECK(std::abs(mean - lambda) <= 3.0 * std::sqrt(lambda));
}

TEST_CASE("poisson process: deterministic given seed") {
    const Ball ball({1, -2}, 5.0);
    const DiscreteMeasure a = sample_poisson_process(1.0, ball, 42);
    const DiscreteMeasure b = sample_poisson_process(1.0, ball, 42);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a.points[i].x == b.points[i].x);
        CHECK(a.points[i].y == b.points[i].y);
    }
    const DiscreteMeasure c = sample_poisson_process(1.0, ball, 43);
    CHECK(a.size() != c.size());  // different stream in practice
}

TEST_CASE("poisson process: vanishing area gives empty measure") {
    int empties = 0;
    for (int s = 0; s < 50; ++s)
        if (sample_poisson_process(1.0, Ball({0, 0}, 1e-6), s).empty()) ++empties;
    CHECK(empties == 50);
}

TEST_CASE("perturbed lattice: zero amplitude is the exact lattice") {
    const Ball ball({0, 0}, 4.0);
    const DiscreteMeasure mu = perturbed_lattice(1.0, 0.0, ball, 3);
    for (size_t i = 0; i < mu.size(); ++i) {
        CHECK(mu.points[i].x == std::round(mu.points[i].x));
        CHECK(mu.points[i].y == std::round(mu.points[i].y));
        CHECK(mu.weights[i] == 1.0);
    }
    CHECK(mu.size() > 0);
}

TEST_CASE("perturbed lattice: displacement bounded by sqrt(2)*amplitude") {
    const Ball ball({0, 0}, 20.0);
    const double amp = 0.05;
    const DiscreteMeasure mu = perturbed_lattice(1.0, amp, ball, 11);
    for (const Vec2& p : mu.points) {
        const Vec2 site{std::round(p.x), std::round(p.y)};
        CHECK(norm(p - site) <= std::sqrt(2.0) * amp + 1e-15);
    }
}

TEST_CASE("perturbed lattice: determinism and degenerate spacing") {
    const Ball ball({0, 0}, 8.0);
    const DiscreteMeasure a = perturbed_lattice(1.0, 0.3, ball, 5);
    const DiscreteMeasure b = perturbed_lattice(1.0, 0.3, ball, 5);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a.points[i].x == b.points[i].x);
    CHECK_THROWS_WITH(perturbed_lattice(9.0, 0.1, ball, 1), "degenerate lattice");
}

TEST_CASE("lebesgue quadrature: mass is exactly the ball area") {
    for (int cells : {8, 17, 64}) {
        const Ball ball({0.3, -1.7}, 1.0);
        const DiscreteMeasure q = lebesgue_quadrature(ball, cells);
        CHECK(std::abs(q.total_mass - M_PI) <= 1e-9 * M_PI);
    }
}

TEST_CASE("lebesgue quadrature: cell weights bounded by cell area") {
    const DiscreteMeasure q = lebesgue_quadrature(Ball({0, 0}, 1.0), 8);
    for (double w : q.weights) CHECK(w <= (2.0 / 8) * (2.0 / 8) + 1e-15);
}

TEST_CASE("lebesgue quadrature: affine functions integrate exactly") {
    const Ball ball({2.0, 1.0}, 3.0);
    const DiscreteMeasure q = lebesgue_quadrature(ball, 32);
    // integral of (a + b.x) over the ball = a*|B| + b . center * |B|
    const double a = 0.7, bx = -1.3, by = 2.1;
    double integral = 0.0;
    Vec2 first_moment{0, 0};
    for (size_t i = 0; i < q.size(); ++i) {
        integral += q.weights[i] * (a + bx * q.points[i].x + by * q.points[i].y);
        first_moment += q.weights[i] * q.points[i];
    }
    const double expect = ball.area() * (a + bx * ball.center.x + by * ball.center.y);
    CHECK(std::abs(integral - expect) <= 1e-9 * std::abs(expect));
    CHECK(std::abs(first_moment.x - ball.center.x * ball.area()) <= 1e-9 * ball.area());
    CHECK(std::abs(first_moment.y - ball.center.y * ball.area()) <= 1e-9 * ball.area());
}

TEST_CASE("restrict: area-ratio kappa on nested quadratures") {
    const DiscreteMeasure q = lebesgue_quadrature(Ball({0, 0}, 2.0), 128);
    const Restriction r = restrict_to_ball(q, Ball({0, 0}, 1.0));
    CHECK(std::abs(r.kappa - 1.0) <= 0.02);
}

TEST_CASE("restrict: trivial cases") {
    const Restriction e = restrict_to_ball(DiscreteMeasure{}, Ball({0, 0}, 1.0));
    CHECK(e.measure.empty());
    CHECK(e.kappa == 0.0);

    DiscreteMeasure atom;
    atom.push({0, 0}, M_PI);
    const Restriction r = restrict_to_ball(atom, Ball({0, 0}, 1.0));
    CHECK(r.kappa == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("restrict composes: nested balls equal inner restriction") {
    const DiscreteMeasure mu = sample_poisson_process(2.0, Ball({0, 0}, 4.0), 99);
    const Ball outer({0.5, 0}, 2.0), inner({0.2, 0.1}, 1.0);
    const Restriction two_step = restrict_to_ball(restrict_to_ball(mu, outer).measure, inner);
    const Restriction one_step = restrict_to_ball(mu, inner);
    REQUIRE(two_step.measure.size() == one_step.measure.size());
    CHECK(two_step.kappa == one_step.kappa);
}

TEST_CASE("normalize_to_mass") {
    DiscreteMeasure mu;
    mu.push({0, 0}, 1.0);
    mu.push({1, 0}, 1.0);
    const DiscreteMeasure half = normalize_to_mass(mu, 1.0);
    CHECK(half.weights[0] == 0.5);
    CHECK(half.weights[1] == 0.5);
    const DiscreteMeasure same = normalize_to_mass(mu, mu.total_mass);
    CHECK(same.weights[0] == 1.0);
    CHECK_THROWS(normalize_to_mass(DiscreteMeasure{}, 1.0));
}

TEST_CASE("normalized poisson sample has kappa exactly 1") {
    const Ball ball({0, 0}, 6.0);
    const DiscreteMeasure mu = sample_poisson_process(1.0, ball, 21);
    const DiscreteMeasure matched = normalize_to_mass(mu, ball.area());
    const Restriction r = restrict_to_ball(matched, ball);
    CHECK(r.kappa == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("mollifier: unit mass and affine-moment exactness") {
    const Mollifier eta(1.0);
    // quadrature of eta over its support on a fine polar grid
    const int nr = 600, nt = 256;
    double mass = 0.0;
    for (int i = 0; i < nr; ++i) {
        const double r = (i + 0.5) / nr;
        mass += eta.profile(r) * r * (1.0 / nr) * (2.0 * M_PI / nt) * nt;
    }
    CHECK(std::abs(mass - 1.0) <= 1e-6);
    CHECK(eta.profile(1.0) == 0.0);
    CHECK(eta.profile(0.0) == doctest::Approx(4.0 / M_PI));
    CHECK(eta.hessian_sup() > 0.0);

    // integral of eta_R times a constant gradient field is that gradient
    const Mollifier etaR(2.5);
    double mR = 0.0;
    for (int i = 0; i < nr; ++i) {
        const double r = 2.5 * (i + 0.5) / nr;
        mR += etaR.profile(r) * r * (2.5 / nr) * 2.0 * M_PI;
    }
    CHECK(std::abs(mR - 1.0) <= 1e-6);
}
