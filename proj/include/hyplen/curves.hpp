#pragma once

#include <span>
#include <vector>

#include "hyplen/metrics.hpp"

namespace hyplen {

/// Discrete closed curve in a model domain; vertices are implicitly closed
/// (last connects back to first).
struct ClosedPolyline {
    std::vector<Complex> vertices;  // >= 8, strictly interior, consecutive distinct
    ModelSurface domain;

    ClosedPolyline(std::vector<Complex> vertices, ModelSurface domain);
};

/// Circle |z - center| = rho discretized with n vertices, positively oriented.
ClosedPolyline make_circle(const ModelSurface& domain, double rho, int n,
                           Complex center = Complex{0.0, 0.0});

/// Total argument increment / 2 pi; exact integer for polylines avoiding the
/// center. Throws std::invalid_argument when a vertex equals the center.
int winding_number(std::span<const Complex> vertices, Complex center);
int winding_number(const ClosedPolyline& curve, Complex center);

/// Hyperbolic length of the polyline (wraps metrics::curve_length).
double length(const ClosedPolyline& curve, int quadrature_order = 8);

/// Segment self-intersection diagnostic (simplicity is tracked, not enforced).
bool is_embedded(const ClosedPolyline& curve);

enum class ShortenStatus { converged, escaped_to_puncture, max_iterations };

struct ShortenOptions {
    double step_tolerance = 1e-12;      // line-search displacement floor, relative
                                        // to the curve's euclidean length
    double gradient_tolerance = 1e-8;   // sup over vertices of |grad| / density
                                        // (scale-invariant residual)
    int max_iterations = 20000;
    int quadrature_order = 8;
    int resample_interval = 25;         // uniform arc-length resampling cadence
    double escape_clearance = 1e-6;     // puncture distance triggering escape
    int escape_window = 50;             // "still decreasing" lookback
    int escape_confirm_iterations = 100;  // extra monotone iterations before reporting
    double collapse_floor = 1e-6;       // euclidean total length of a point-like curve
};

struct ShorteningResult {
    ClosedPolyline final_curve;
    double final_length;    // spline-refined estimate of the smooth length
    ShortenStatus status;
    std::vector<double> length_trace;  // discrete objective, one entry per iteration
    double final_gradient_norm;        // scale-invariant residual (see ShortenOptions)
    int iterations;
    bool final_embedded;
};

/// Homotopy-constrained curve shortening: monotone (Armijo) gradient descent
/// on the discrete length with Barzilai-Borwein trial steps, periodic
/// arc-length resampling, per-vertex displacement capped at half the
/// clearance so winding data is preserved at every iterate.
ShorteningResult shorten(const ClosedPolyline& curve, const ShortenOptions& options = {});
ShorteningResult shorten(const ClosedPolyline& curve, double step_tolerance,
                         double gradient_tolerance, int max_iterations);

struct StableLength {
    double value;
    bool attained;
};

/// Stable hyperbolic length of the curve's free homotopy class: the value the
/// shortening flow converges to, or 0 (not attained) when the class escapes
/// to a puncture.
StableLength stable_length(const ClosedPolyline& curve, const ShortenOptions& options = {});

/// Length of the periodic cubic spline through the vertices; the
/// discretization-insensitive length estimate reported by shorten().
double spline_refined_length(const ModelSurface& domain, std::span<const Complex> vertices,
                             int quadrature_order = 8);

/// Resample a closed polyline to uniform euclidean arc length, same count.
std::vector<Complex> resample_uniform(std::span<const Complex> vertices);

}  // namespace hyplen
