#include "hyplen/deform.hpp"

#include <cmath>
#include <numbers>

namespace hyplen {

namespace {

using std::numbers::pi;

// C^2 smoothstep on [0,1].
double smoothstep5(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

}  // namespace

double radial_profile(const RadialFamily& family, double r) {
    if (!(r >= 0.0 && r < 1.0)) {
        throw std::domain_error("radial_profile: radius must lie in [0,1)");
    }
    if (family.variant == RadialVariant::phi) {
        return r + family.t * std::tan(pi * r / 2.0);
    }
    return std::tan((pi / 2.0) * r / (1.0 + family.t));
}

double radial_profile_derivative(const RadialFamily& family, double r) {
    if (!(r >= 0.0 && r < 1.0)) {
        throw std::domain_error("radial_profile_derivative: radius must lie in [0,1)");
    }
    if (family.variant == RadialVariant::phi) {
        const double c = std::cos(pi * r / 2.0);
        return 1.0 + family.t * (pi / 2.0) / (c * c);
    }
    const double s = 1.0 + family.t;
    const double c = std::cos((pi / 2.0) * r / s);
    return (pi / (2.0 * s)) / (c * c);
}

Complex radial_map(const RadialFamily& family, Complex z) {
    const double r = std::abs(z);
    if (!(r < 1.0)) {
        throw std::domain_error("radial_map: point not in the open unit disc");
    }
    if (r == 0.0) return Complex{0.0, 0.0};
    return z * (radial_profile(family, r) / r);
}

double mu(double r) {
    if (!(r > 1.0)) throw std::invalid_argument("mu: radius must exceed 1");
    return pi * pi / std::log(r);
}

CollarInterpolation::CollarInterpolation(double r_, double r_prime_, double t_)
    : CollarInterpolation(r_, r_prime_, r_prime_, std::sqrt(r_prime_ * r_), t_) {}

CollarInterpolation::CollarInterpolation(double r_, double r_prime_, double plateau_,
                                         double support_, double t_)
    : r(r_), r_prime(r_prime_), plateau(plateau_), support(support_), t(t_) {
    if (!(r > r_prime && r_prime > 1.0)) {
        throw std::invalid_argument("CollarInterpolation: need r > r' > 1");
    }
    if (!(plateau >= 1.0 && support > plateau && support < r)) {
        throw std::invalid_argument("CollarInterpolation: need 1 <= plateau < support < r");
    }
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument("CollarInterpolation: t must lie in [0,1]");
    }
}

double collar_cutoff(const CollarInterpolation& interp, Complex z) {
    const double s = std::abs(std::log(std::abs(z)));
    const double a = std::log(interp.plateau);
    const double b = std::log(interp.support);
    if (s <= a) return 1.0;
    if (s >= b) return 0.0;
    return 1.0 - smoothstep5((s - a) / (b - a));
}

double symmetric_annulus_density(double r, Complex z) {
    // A(1/r, r) scaled by 1/r is the canonical chart A(1/r^2, 1).
    const ModelSurface chart = ModelSurface::Annulus(1.0 / (r * r));
    return density(chart, z / r) / r;
}

double collar_density(const CollarInterpolation& interp, Complex z) {
    const double rho = std::abs(z);
    if (!(rho > 1.0 / interp.r && rho < interp.r)) {
        throw std::domain_error("collar_density: point outside the chart annulus");
    }
    const double chi = collar_cutoff(interp, z);
    const double lam_h = symmetric_annulus_density(interp.r, z);
    const double lam_rho = 1.0 / rho;  // cylinder metric
    return std::sqrt((1.0 - interp.t * chi) * lam_h * lam_h +
                     interp.t * chi * lam_rho * lam_rho);
}

std::vector<CollarSample> collar_lengths(const CollarInterpolation& interp,
                                         std::span<const Complex> curve,
                                         std::span<const double> t_grid,
                                         int quadrature_order) {
    if (curve.size() < 2) {
        throw std::invalid_argument("collar_lengths: need at least two curve vertices");
    }
    const Quadrature& q = gauss_legendre_01(quadrature_order);
    const double bound = mu(interp.r_prime);
    std::vector<CollarSample> samples;
    samples.reserve(t_grid.size());
    for (const double t : t_grid) {
        CollarInterpolation at{interp.r, interp.r_prime, interp.plateau, interp.support, t};
        double total = 0.0;
        for (size_t i = 0; i < curve.size(); ++i) {
            const Complex p = curve[i];
            const Complex delta = curve[(i + 1) % curve.size()] - p;
            const double len = std::abs(delta);
            double seg = 0.0;
            for (size_t kq = 0; kq < q.nodes.size(); ++kq) {
                seg += q.weights[kq] * collar_density(at, p + q.nodes[kq] * delta);
            }
            total += seg * len;
        }
        samples.push_back({t, total, bound});
    }
    return samples;
}

RepresentationPath::RepresentationPath(SchottkyRepresentation base_,
                                       std::vector<std::function<double(double)>> schedules_)
    : base(std::move(base_)), schedules(std::move(schedules_)) {
    if (schedules.size() != base.generators.size()) {
        throw std::invalid_argument("RepresentationPath: need one schedule per generator");
    }
}

SchottkyRepresentation representation_at(const RepresentationPath& path, double t,
                                         uint64_t seed) {
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::invalid_argument("representation_at: t must lie in [0,1]");
    }
    std::vector<MoebiusTransform> gens;
    gens.reserve(path.base.generators.size());
    for (size_t i = 0; i < path.base.generators.size(); ++i) {
        const double ell = path.schedules[i](t);
        if (!(ell > 0.0)) {
            throw std::invalid_argument("representation_at: schedule " + std::to_string(i + 1) +
                                        " is nonpositive at t = " + std::to_string(t));
        }
        gens.push_back(with_translation_length(path.base.generators[i], ell));
    }
    SchottkyRepresentation rep(std::move(gens));
    const PingPongReport report = ping_pong_certificate(rep, 64, seed);
    if (!report.certified) {
        throw CertificationError("representation_at: certificate failed at t = " +
                                 std::to_string(t) + ": " + report.detail);
    }
    return rep;
}

AnnulusFamily annulus_family_log_linear(double inner0, double inner1) {
    if (!(inner0 > 0.0 && inner0 < 1.0 && inner1 > 0.0 && inner1 < 1.0)) {
        throw std::invalid_argument("annulus_family_log_linear: radii must lie in (0,1)");
    }
    const double l0 = std::log(inner0), l1 = std::log(inner1);
    return {[l0, l1](double t) { return std::exp((1.0 - t) * l0 + t * l1); }};
}

std::vector<std::pair<double, double>> lambda_of_t(const AnnulusFamily& family,
                                                   std::span<const double> t_grid) {
    std::vector<std::pair<double, double>> out;
    out.reserve(t_grid.size());
    for (const double t : t_grid) {
        const double r = family.inner_of_t(t);
        if (!(r > 0.0 && r < 1.0)) {
            throw std::domain_error("lambda_of_t: inner radius left (0,1) at t = " +
                                    std::to_string(t));
        }
        out.push_back({t, 2.0 * pi * pi / std::log(1.0 / r)});
    }
    return out;
}

std::vector<std::pair<double, double>> lambda_of_t(const RepresentationPath& path,
                                                   const Word& cls,
                                                   std::span<const double> t_grid,
                                                   uint64_t seed) {
    std::vector<std::pair<double, double>> out;
    out.reserve(t_grid.size());
    for (const double t : t_grid) {
        const SchottkyRepresentation rep = representation_at(path, t, seed);
        out.push_back({t, translation_length(evaluate_word(rep, cls))});
    }
    return out;
}

}  // namespace hyplen
