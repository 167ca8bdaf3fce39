#pragma once

#include <functional>
#include <span>
#include <vector>

#include "hyplen/curves.hpp"
#include "hyplen/groups.hpp"

namespace hyplen {

enum class RadialVariant { phi, phi_star };

/// Radial deformation family of the unit disc:
///   phi      uses rho_t(r)  = r + t tan(pi r / 2),
///   phi_star uses rho*_t(r) = tan((pi/2) r / (1+t)),
/// both strictly increasing on [0,1). For t > 0 phi maps the disc onto the
/// plane; phi* maps it onto the disc of radius tan(pi / (2(1+t))).
struct RadialFamily {
    RadialVariant variant{RadialVariant::phi};
    double t{0.0};
};

double radial_profile(const RadialFamily& family, double r);
double radial_profile_derivative(const RadialFamily& family, double r);

/// z -> z rho(|z|)/|z| (0 at 0 by continuity). Throws for |z| >= 1.
Complex radial_map(const RadialFamily& family, Complex z);

/// Hyperbolic length of the unit circle in the symmetric annulus A(1/r, r):
/// mu(r) = pi^2 / log r. Throws for r <= 1.
double mu(double r);

/// Collar metric interpolation H_t = (1 - t chi) h + t chi rho on the chart
/// annulus A(1/r, r): h is the chart's hyperbolic metric, rho the cylinder
/// metric |dz|^2/|z|^2, and chi a C^2 radial bump that is 1 on the inner
/// collar A(1/plateau, plateau) and 0 outside A(1/support, support).
struct CollarInterpolation {
    double r;        // chart outer radius, > r_prime
    double r_prime;  // inner collar radius, > 1
    double plateau;  // chi == 1 for |log z| <= log(plateau); default r_prime
    double support;  // chi == 0 for |log z| >= log(support); default sqrt(plateau r)
    double t{0.0};

    CollarInterpolation(double r, double r_prime, double t = 0.0);
    CollarInterpolation(double r, double r_prime, double plateau, double support, double t);
};

double collar_cutoff(const CollarInterpolation& interp, Complex z);

/// Conformal density of H_t (both summands are conformal, so densities add
/// in squares). Positive definite for every t in [0,1].
double collar_density(const CollarInterpolation& interp, Complex z);

/// Hyperbolic density of the symmetric annulus A(1/r, r).
double symmetric_annulus_density(double r, Complex z);

struct CollarSample {
    double t;
    double riemannian_length;       // quadrature length of the curve under H_t
    double kobayashi_upper_bound;   // mu(r') bound for the t = 1 structure
};

/// Lengths of a closed curve (given in the chart A(1/r, r)) under H_t over a
/// t grid. Throws when the curve leaves the chart.
std::vector<CollarSample> collar_lengths(const CollarInterpolation& interp,
                                         std::span<const Complex> curve,
                                         std::span<const double> t_grid,
                                         int quadrature_order = 8);

/// Continuous deformation of a Schottky representation: generator i keeps
/// its axis while its translation length follows schedule_i(t).
struct RepresentationPath {
    SchottkyRepresentation base;
    std::vector<std::function<double(double)>> schedules;

    RepresentationPath(SchottkyRepresentation base,
                       std::vector<std::function<double(double)>> schedules);
};

/// Representation at parameter t, ping-pong re-certified; certification
/// failure raises CertificationError with the witness report.
SchottkyRepresentation representation_at(const RepresentationPath& path, double t,
                                         uint64_t seed = 0);

/// Annulus family t -> Annulus(inner(t)).
struct AnnulusFamily {
    std::function<double(double)> inner_of_t;
};

/// Log-linear interpolation between two inner radii (core length
/// lambda(t) = 2 pi^2 / ((1-t) log(1/r0) + t log(1/r1))).
AnnulusFamily annulus_family_log_linear(double inner0, double inner1);

/// Stable length of the core (winding-1) class: closed form 2 pi^2 / log(1/r(t)).
std::vector<std::pair<double, double>> lambda_of_t(const AnnulusFamily& family,
                                                   std::span<const double> t_grid);

/// Translation length of the class word along the representation path.
std::vector<std::pair<double, double>> lambda_of_t(const RepresentationPath& path,
                                                   const Word& cls,
                                                   std::span<const double> t_grid,
                                                   uint64_t seed = 0);

}  // namespace hyplen
