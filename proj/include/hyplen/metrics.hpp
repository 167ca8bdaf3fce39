#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hyplen/moebius.hpp"

namespace hyplen {

enum class SurfaceTag { disc, punctured_disc, annulus, plane, punctured_plane };

/// Model hyperbolic surface as a subset of the plane:
/// Disc = {|z|<1}, PuncturedDisc = Disc \ {0}, Annulus(r) = {r<|z|<1},
/// Plane = C, PuncturedPlane = C \ {0}.
struct ModelSurface {
    SurfaceTag tag{SurfaceTag::disc};
    double inner{0.0};  // annulus inner radius, in (0,1)

    static ModelSurface Disc() { return {SurfaceTag::disc, 0.0}; }
    static ModelSurface PuncturedDisc() { return {SurfaceTag::punctured_disc, 0.0}; }
    static ModelSurface Annulus(double inner);
    static ModelSurface Plane() { return {SurfaceTag::plane, 0.0}; }
    static ModelSurface PuncturedPlane() { return {SurfaceTag::punctured_plane, 0.0}; }
};

std::string surface_name(const ModelSurface& s);

bool contains(const ModelSurface& s, Complex z);

/// Euclidean distance from z to the nearest boundary point or puncture
/// (+infinity on the plane).
double clearance(const ModelSurface& s, Complex z);

/// False exactly when the Kobayashi-Royden metric vanishes identically
/// (Plane, PuncturedPlane).
bool is_hyperbolic(const ModelSurface& s);

/// Punctures of the domain (PuncturedDisc and PuncturedPlane have {0}).
std::vector<Complex> punctures(const ModelSurface& s);

/// Kobayashi-Royden = Poincare density at curvature -1 normalization:
///   Disc:          2 / (1 - |z|^2)
///   PuncturedDisc: 1 / (|z| log(1/|z|))
///   Annulus(r):    (pi/log(1/r)) / (|z| sin(pi log|z| / log r))
///   Plane, PuncturedPlane: 0
/// Throws std::domain_error outside the open domain.
double density(const ModelSurface& s, Complex z);

/// density and its radial derivative d(density)/d|z| (densities are radial).
struct DensityJet {
    double value;
    double d_radius;
};
DensityJet density_jet(const ModelSurface& s, Complex z);

/// Gradient of density as a function of (x, y).
std::array<double, 2> density_gradient(const ModelSurface& s, Complex z);

/// Non-throwing density: +infinity outside the open domain. Used by
/// optimization line searches to reject invalid iterates.
double density_or_infinity(const ModelSurface& s, Complex z) noexcept;

/// Hyperbolic length of a polyline by composite Gauss-Legendre quadrature
/// (order nodes per segment). closed appends the wrap-around segment.
/// Throws std::domain_error when the curve touches the boundary/puncture,
/// std::invalid_argument for quadrature orders outside {2,4,8,16}.
double curve_length(const ModelSurface& s, std::span<const Complex> vertices,
                    bool closed, int quadrature_order = 8);

/// Length of a smooth parametric curve t -> f(t), t in [t0,t1], given its
/// derivative, by composite Gauss-Legendre quadrature over `panels` panels.
double parametric_curve_length(const ModelSurface& s,
                               const std::function<Complex(double)>& f,
                               const std::function<Complex(double)>& df,
                               double t0, double t1, int panels = 256,
                               int quadrature_order = 8);

/// Hyperbolic length of the circle |z| = rho (exact for the radial model
/// densities: 2 pi rho density(rho)).
double circle_length(const ModelSurface& s, double rho);

/// K + 1 where K = -density^{-2} Laplacian(log density), Laplacian by
/// 5-point central differences with the given spacing. Requires clearance
/// greater than 4*step.
double curvature_residual(const ModelSurface& s, Complex z, double step);

/// Closed-form holomorphic map between model surfaces with derivative.
struct HolomorphicMap {
    ModelSurface source;
    ModelSurface target;
    std::function<Complex(Complex)> f;
    std::function<Complex(Complex)> df;
    std::string name;
};

HolomorphicMap disc_identity_map();

/// Universal covering Disc -> PuncturedDisc, z -> exp(-(1+z)/(1-z)).
HolomorphicMap disc_to_punctured_disc_covering();

/// z -> exp(i alpha z) scaled by e^{-alpha_prime} into Annulus(e^{-2 alpha_prime}),
/// the symmetric annulus A(1/r,r), r = e^{alpha_prime}, in the A(r,1) chart.
/// Requires 0 < alpha <= alpha_prime.
HolomorphicMap disc_exp_annulus_map(double alpha, double alpha_prime);

/// max over the grid of density_Y(f(z)) |f'(z)| - density_X(z); nonpositive
/// (up to roundoff) by the Schwarz-Pick/Ahlfors-Schwarz inequality.
/// Throws std::domain_error if the image leaves the target domain.
double schwarz_pick_violation(const HolomorphicMap& map, std::span<const Complex> grid);

/// Polar grid in the disc: n_r radii in (0, max_r], n_theta angles.
std::vector<Complex> disc_grid(int n_r, int n_theta, double max_r = 0.9);

/// Gauss-Legendre nodes/weights on [0,1] for order in {2,4,8,16}.
struct Quadrature {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const Quadrature& gauss_legendre_01(int order);

}  // namespace hyplen
