#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hyplen/curves.hpp"

using namespace hyplen;
using std::numbers::pi;

namespace {

// Independent oracle for the core-class stable length on Annulus(r):
// golden-section minimization of the circle length over the radius.
double golden_core_length(const ModelSurface& ann, double lo, double hi) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    auto f = [&](double rho) { return circle_length(ann, rho); };
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 300; ++it) {
        if (fc < fd) {
            b = d; d = c; fd = fc; c = b - phi * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd; d = a + phi * (b - a); fd = f(d);
        }
    }
    return f((a + b) / 2.0);
}

}  // namespace

TEST_CASE("polyline validation") {
    CHECK_THROWS_AS(make_circle(ModelSurface::Disc(), 0.5, 4), std::invalid_argument);
    CHECK_THROWS_AS(make_circle(ModelSurface::Annulus(0.6), 0.5, 32), std::domain_error);
    std::vector<Complex> dup(8, Complex{0.5, 0.0});
    CHECK_THROWS_AS(ClosedPolyline(dup, ModelSurface::Disc()), std::invalid_argument);
}

TEST_CASE("winding numbers") {
    const ClosedPolyline circle = make_circle(ModelSurface::PuncturedDisc(), 0.5, 64);
    CHECK(winding_number(circle, {0.0, 0.0}) == 1);

    std::vector<Complex> reversed(circle.vertices.rbegin(), circle.vertices.rend());
    CHECK(winding_number(ClosedPolyline(reversed, circle.domain), {0.0, 0.0}) == -1);

    const ClosedPolyline off = make_circle(ModelSurface::PuncturedDisc(), 0.1, 32, {0.5, 0.0});
    CHECK(winding_number(off, {0.0, 0.0}) == 0);

    CHECK_THROWS_AS(winding_number(circle, circle.vertices[3]), std::invalid_argument);
}

TEST_CASE("embeddedness diagnostic") {
    CHECK(is_embedded(make_circle(ModelSurface::Disc(), 0.5, 32)));
    // pentagram with three split edges: classic self-intersecting octagon
    std::vector<Complex> v;
    std::vector<Complex> star(5);
    for (int k = 0; k < 5; ++k) {
        star[k] = std::polar(0.5, pi / 2.0 + k * 4.0 * pi / 5.0);
    }
    for (int k = 0; k < 5; ++k) {
        v.push_back(star[k]);
        if (k < 3) v.push_back(star[k] + 0.5 * (star[(k + 1) % 5] - star[k]));
    }
    CHECK_FALSE(is_embedded(ClosedPolyline(v, ModelSurface::Disc())));
}

TEST_CASE("shorten rejects non-hyperbolic domains") {
    const ClosedPolyline c = make_circle(ModelSurface::PuncturedPlane(), 1.0, 32);
    CHECK_THROWS_AS(shorten(c), std::domain_error);
}

TEST_CASE("annulus core class converges to the oracle value" * doctest::timeout(60)) {
    const double r = std::exp(-2.0 * pi * pi);
    const ModelSurface ann = ModelSurface::Annulus(r);
    const double expected = 2.0 * pi * pi / std::log(1.0 / r);  // closed form: 1.0
    CHECK(golden_core_length(ann, 4.0 * r, 0.9) == doctest::Approx(expected).epsilon(1e-6));

    const ShorteningResult res = shorten(make_circle(ann, 0.5, 256));
    CHECK(res.status == ShortenStatus::converged);
    CHECK(std::abs(res.final_length - expected) < 1e-4);
    const double core = std::sqrt(r);
    for (const Complex v : res.final_curve.vertices) {
        CHECK(std::abs(std::abs(v) - core) < 1e-4);
    }
    CHECK(winding_number(res.final_curve, {0.0, 0.0}) == 1);
    CHECK(res.final_embedded);
    for (size_t i = 1; i < res.length_trace.size(); ++i) {
        CHECK(res.length_trace[i] <= res.length_trace[i - 1]);
    }
}

TEST_CASE("oracle agreement across annulus moduli" * doctest::timeout(120)) {
    for (const double r : {std::exp(-pi), std::exp(-2.0 * pi), std::exp(-2.0 * pi * pi)}) {
        const ModelSurface ann = ModelSurface::Annulus(r);
        const double expected = 2.0 * pi * pi / std::log(1.0 / r);
        const StableLength sl = stable_length(make_circle(ann, 0.5, 256));
        CHECK(sl.attained);
        CHECK(std::abs(sl.value - expected) < 1e-4);
    }
}

TEST_CASE("punctured disc winding class escapes to the puncture" * doctest::timeout(60)) {
    const ClosedPolyline circle = make_circle(ModelSurface::PuncturedDisc(), 0.5, 128);
    const ShorteningResult res = shorten(circle);
    CHECK(res.status == ShortenStatus::escaped_to_puncture);
    CHECK(res.length_trace.back() < 0.1);
    CHECK(res.length_trace.back() < 0.2);
    for (size_t i = 1; i < res.length_trace.size(); ++i) {
        CHECK(res.length_trace[i] <= res.length_trace[i - 1]);
    }
    CHECK(winding_number(res.final_curve, {0.0, 0.0}) == 1);

    const StableLength sl = stable_length(circle);
    CHECK(sl.value == 0.0);
    CHECK_FALSE(sl.attained);
}

TEST_CASE("contractible loop collapses" * doctest::timeout(60)) {
    const ClosedPolyline loop = make_circle(ModelSurface::Annulus(0.1), 0.05, 32, {0.6, 0.0});
    REQUIRE(winding_number(loop, {0.0, 0.0}) == 0);
    const ShorteningResult res = shorten(loop);
    CHECK(res.status == ShortenStatus::converged);
    CHECK(res.final_length < 1e-3);
    CHECK(winding_number(res.final_curve, {0.0, 0.0}) == 0);
}

TEST_CASE("reparametrization invariance: 32 vs 128 vertices" * doctest::timeout(120)) {
    const double r = std::exp(-pi);
    const ModelSurface ann = ModelSurface::Annulus(r);
    const ShorteningResult a = shorten(make_circle(ann, 0.4, 32));
    const ShorteningResult b = shorten(make_circle(ann, 0.4, 128));
    CHECK(a.status == ShortenStatus::converged);
    CHECK(b.status == ShortenStatus::converged);
    CHECK(std::abs(a.final_length - b.final_length) < 1e-4);
}

TEST_CASE("upper-bound chain from the exp(i alpha z) construction" * doctest::timeout(60)) {
    // A(1/r, r) with r = e^{alpha'} normalizes to Annulus(e^{-2 alpha'}).
    const double alpha_prime = 4.0 * pi, alpha = 3.0 * pi;
    const ModelSurface ann = ModelSurface::Annulus(std::exp(-2.0 * alpha_prime));
    const double core = std::exp(-alpha_prime);
    const StableLength sl = stable_length(make_circle(ann, 0.3, 256));
    CHECK(sl.attained);
    const double bound = 2.0 * std::atanh(2.0 * pi / alpha);
    CHECK(sl.value <= bound);
    CHECK(sl.value == doctest::Approx(2.0 * pi * pi / (2.0 * alpha_prime)).epsilon(1e-4));
    (void)core;
}

TEST_CASE("spline-refined length matches smooth circles") {
    const ModelSurface disc = ModelSurface::Disc();
    const ClosedPolyline c = make_circle(disc, 0.5, 48);
    const double smooth = circle_length(disc, 0.5);
    CHECK(spline_refined_length(disc, c.vertices) == doctest::Approx(smooth).epsilon(1e-6));
    // polygon length visibly underestimates at this vertex count
    CHECK(length(c) < smooth - 1e-4);
}
