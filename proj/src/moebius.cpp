#include "hyplen/moebius.hpp"

#include <algorithm>
#include <cmath>

namespace hyplen {

namespace {

constexpr double kParabolicBand = 1e-10;

void canonical_sign(MoebiusTransform& m) {
    double tr = m.a + m.d;
    double pivot = tr;
    if (pivot == 0.0) {
        for (double e : {m.a, m.b, m.c, m.d}) {
            if (e != 0.0) {
                pivot = e;
                break;
            }
        }
    }
    if (pivot < 0.0) {
        m.a = -m.a;
        m.b = -m.b;
        m.c = -m.c;
        m.d = -m.d;
    }
}

}  // namespace

MoebiusTransform MoebiusTransform::from_entries(double a, double b, double c, double d) {
    const double det = a * d - b * c;
    if (!(det > 0.0)) {
        throw std::invalid_argument("MoebiusTransform: determinant must be positive");
    }
    const double s = std::sqrt(det);
    MoebiusTransform m{a / s, b / s, c / s, d / s};
    canonical_sign(m);
    return m;
}

MoebiusTransform MoebiusTransform::from_normalized_entries(double a, double b, double c,
                                                           double d) {
    MoebiusTransform m{a, b, c, d};
    canonical_sign(m);
    return m;
}

MoebiusTransform compose(const MoebiusTransform& g, const MoebiusTransform& h) {
    return MoebiusTransform::from_entries(
        g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
        g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d);
}

MoebiusTransform inverse(const MoebiusTransform& g) {
    return MoebiusTransform::from_entries(g.d, -g.b, -g.c, g.a);
}

MoebiusTransform power(const MoebiusTransform& g, int n) {
    if (n < 0) return power(inverse(g), -n);
    MoebiusTransform acc = MoebiusTransform::identity();
    for (int i = 0; i < n; ++i) acc = compose(acc, g);
    return acc;
}

bool approx_equal(const MoebiusTransform& g, const MoebiusTransform& h, double tol) {
    const double diff = std::max({std::abs(g.a - h.a), std::abs(g.b - h.b),
                                  std::abs(g.c - h.c), std::abs(g.d - h.d)});
    const double sum = std::max({std::abs(g.a + h.a), std::abs(g.b + h.b),
                                 std::abs(g.c + h.c), std::abs(g.d + h.d)});
    return std::min(diff, sum) <= tol;
}

bool is_identity(const MoebiusTransform& g, double tol) {
    return approx_equal(g, MoebiusTransform::identity(), tol);
}

IsometryClass classify(const MoebiusTransform& g) {
    const double t = std::abs(g.trace());
    if (is_identity(g)) return {IsometryTag::identity, 0.0};
    if (t > 2.0 + kParabolicBand) {
        return {IsometryTag::hyperbolic, 2.0 * std::acosh(t / 2.0)};
    }
    if (t >= 2.0 - kParabolicBand) return {IsometryTag::parabolic, 0.0};
    return {IsometryTag::elliptic, 0.0};
}

double translation_length(const MoebiusTransform& g) {
    const IsometryClass cls = classify(g);
    if (cls.tag != IsometryTag::hyperbolic) {
        throw std::invalid_argument("translation_length: transform is not hyperbolic");
    }
    return cls.translation_length;
}

Complex apply(const MoebiusTransform& g, Complex z, Model model) {
    if (model == Model::half_plane) {
        if (!(z.imag() > 0.0)) {
            throw std::domain_error("apply: point not in the open upper half-plane");
        }
        return (g.a * z + g.b) / (g.c * z + g.d);
    }
    if (!(std::abs(z) < 1.0)) {
        throw std::domain_error("apply: point not in the open unit disc");
    }
    return apply_disc(disc_matrix(g), z);
}

Complex cayley_to_disc(Complex z) {
    return (z - Complex(0, 1)) / (z + Complex(0, 1));
}

Complex cayley_to_half_plane(Complex w) {
    return Complex(0, 1) * (1.0 + w) / (1.0 - w);
}

DiscMatrix disc_matrix(const MoebiusTransform& g) {
    // Conjugation by the Cayley matrix [[1,-i],[1,i]] yields the SU(1,1) form.
    const Complex alpha{(g.a + g.d) / 2.0, (g.b - g.c) / 2.0};
    const Complex beta{(g.a - g.d) / 2.0, -(g.b + g.c) / 2.0};
    return {alpha, beta};
}

Complex apply_disc(const DiscMatrix& m, Complex w) {
    return (m.alpha * w + m.beta) / (std::conj(m.beta) * w + std::conj(m.alpha));
}

DiscMatrix disc_inverse(const DiscMatrix& m) {
    return {std::conj(m.alpha), -m.beta};
}

IsometricCircle isometric_circle(const MoebiusTransform& g) {
    return isometric_circle(disc_matrix(g));
}

IsometricCircle isometric_circle(const DiscMatrix& m) {
    const double cnorm = std::abs(m.beta);
    if (cnorm < 1e-14) {
        throw std::domain_error("isometric_circle: undefined for rotations about the disc center");
    }
    return {-std::conj(m.alpha) / std::conj(m.beta), 1.0 / cnorm};
}

MoebiusTransform conjugate(const MoebiusTransform& h, const MoebiusTransform& g) {
    return compose(compose(h, g), inverse(h));
}

MoebiusTransform axis_frame(const MoebiusTransform& g) {
    const IsometryClass cls = classify(g);
    if (cls.tag != IsometryTag::hyperbolic) {
        throw std::invalid_argument("axis_frame: transform is not hyperbolic");
    }
    const double tr = g.trace();  // > 2 after canonical normalization
    const double disc = std::sqrt(tr * tr - 4.0);
    const double mu_plus = (tr + disc) / 2.0;
    const double mu_minus = (tr - disc) / 2.0;

    // Eigenvector for eigenvalue mu: (b, mu - a) or (mu - d, c); pick the
    // numerically larger representative, then normalize deterministically.
    auto eigenvector = [&](double mu) {
        double vx1 = g.b, vy1 = mu - g.a;
        double vx2 = mu - g.d, vy2 = g.c;
        double n1 = std::hypot(vx1, vy1), n2 = std::hypot(vx2, vy2);
        double vx = n1 >= n2 ? vx1 : vx2;
        double vy = n1 >= n2 ? vy1 : vy2;
        double n = std::hypot(vx, vy);
        vx /= n;
        vy /= n;
        double pivot = vx != 0.0 ? vx : vy;
        if (pivot < 0.0) {
            vx = -vx;
            vy = -vy;
        }
        return std::pair{vx, vy};
    };

    auto [px, py] = eigenvector(mu_plus);
    auto [qx, qy] = eigenvector(mu_minus);
    double det = px * qy - py * qx;
    if (det < 0.0) {
        qx = -qx;
        qy = -qy;
        det = -det;
    }
    if (det < 1e-14) {
        throw std::invalid_argument("axis_frame: degenerate eigenvectors");
    }
    const double s = std::sqrt(det);
    return MoebiusTransform::from_entries(px / s, qx / s, py / s, qy / s);
}

MoebiusTransform with_translation_length(const MoebiusTransform& g, double ell) {
    if (!(ell > 0.0)) {
        throw std::invalid_argument("with_translation_length: length must be positive");
    }
    if (std::abs(ell - translation_length(g)) < 1e-12 * std::max(1.0, ell)) return g;
    const MoebiusTransform frame = axis_frame(g);
    const double e = std::exp(ell / 2.0);
    const MoebiusTransform diag = MoebiusTransform::from_entries(e, 0.0, 0.0, 1.0 / e);
    return conjugate(frame, diag);
}

}  // namespace hyplen
