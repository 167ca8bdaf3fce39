#pragma once

#include <complex>
#include <stdexcept>

namespace hyplen {

using Complex = std::complex<double>;

/// Real Moebius transformation z -> (az+b)/(cz+d), kept normalized to
/// det = 1 with a canonical projective sign (positive trace; at trace 0,
/// first nonzero entry positive). T and -T denote the same isometry.
struct MoebiusTransform {
    double a{1.0}, b{0.0}, c{0.0}, d{1.0};

    static MoebiusTransform identity() { return {}; }

    /// Normalizes raw entries. Throws std::invalid_argument if ad - bc <= 0.
    static MoebiusTransform from_entries(double a, double b, double c, double d);

    /// Canonical sign only; trusts det = 1. For products of normalized
    /// factors, where re-evaluating ad - bc would cancel catastrophically.
    static MoebiusTransform from_normalized_entries(double a, double b, double c, double d);

    double trace() const { return a + d; }
    double determinant() const { return a * d - b * c; }
};

enum class IsometryTag { identity, elliptic, parabolic, hyperbolic };

struct IsometryClass {
    IsometryTag tag{IsometryTag::identity};
    double translation_length{0.0};  // positive only for hyperbolic
};

enum class Model { half_plane, disc };

/// Disc-model form of a real Moebius transform: w -> (alpha w + beta)/(conj(beta) w + conj(alpha))
/// with |alpha|^2 - |beta|^2 = 1 (conjugation by the fixed Cayley transform).
struct DiscMatrix {
    Complex alpha, beta;
};

struct IsometricCircle {
    Complex center;
    double radius;
};

MoebiusTransform compose(const MoebiusTransform& g, const MoebiusTransform& h);
MoebiusTransform inverse(const MoebiusTransform& g);
MoebiusTransform power(const MoebiusTransform& g, int n);

/// Sign-insensitive projective comparison.
bool approx_equal(const MoebiusTransform& g, const MoebiusTransform& h, double tol = 1e-10);
bool is_identity(const MoebiusTransform& g, double tol = 1e-10);

/// Trace classification: |tr| < 2 elliptic, |tr| = 2 parabolic (band 1e-10),
/// |tr| > 2 hyperbolic with translation length 2 arccosh(|tr|/2).
IsometryClass classify(const MoebiusTransform& g);

double translation_length(const MoebiusTransform& g);

/// Action on the open model domain. Throws std::domain_error for points on
/// or outside the boundary (Im z <= 0, resp. |z| >= 1).
Complex apply(const MoebiusTransform& g, Complex z, Model model);

// Fixed Cayley transform between the models: z -> (z-i)/(z+i) and its inverse.
Complex cayley_to_disc(Complex z);
Complex cayley_to_half_plane(Complex w);

DiscMatrix disc_matrix(const MoebiusTransform& g);
Complex apply_disc(const DiscMatrix& m, Complex w);
DiscMatrix disc_inverse(const DiscMatrix& m);

/// Isometric circle |conj(beta) w + conj(alpha)| = 1 of the disc-model matrix.
/// Undefined (throws std::domain_error) when the lower-left entry vanishes,
/// i.e. for rotations about the disc center.
IsometricCircle isometric_circle(const MoebiusTransform& g);
IsometricCircle isometric_circle(const DiscMatrix& m);

/// Hyperbolic element with prescribed axis data: conjugate of
/// diag(e^{l/2}, e^{-l/2}) by the given frame.
MoebiusTransform conjugate(const MoebiusTransform& h, const MoebiusTransform& g);

/// Axis frame of a hyperbolic transform: V in SL(2,R) with
/// g = V diag(e^{l/2}, e^{-l/2}) V^{-1}, deterministically normalized.
/// Throws std::invalid_argument for non-hyperbolic input.
MoebiusTransform axis_frame(const MoebiusTransform& g);

/// Same axis and translation direction as g, translation length ell.
MoebiusTransform with_translation_length(const MoebiusTransform& g, double ell);

}  // namespace hyplen
