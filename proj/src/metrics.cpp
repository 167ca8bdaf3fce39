#include "hyplen/metrics.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace hyplen {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using std::numbers::pi;

double annulus_log_ratio(const ModelSurface& s) {
    return std::log(1.0 / s.inner);  // log(1/r) > 0
}

}  // namespace

ModelSurface ModelSurface::Annulus(double inner) {
    if (!(inner > 0.0 && inner < 1.0)) {
        throw std::invalid_argument("Annulus: inner radius must lie in (0,1)");
    }
    return {SurfaceTag::annulus, inner};
}

std::string surface_name(const ModelSurface& s) {
    switch (s.tag) {
        case SurfaceTag::disc: return "disc";
        case SurfaceTag::punctured_disc: return "punctured_disc";
        case SurfaceTag::annulus: return "annulus(" + std::to_string(s.inner) + ")";
        case SurfaceTag::plane: return "plane";
        case SurfaceTag::punctured_plane: return "punctured_plane";
    }
    return "?";
}

bool contains(const ModelSurface& s, Complex z) {
    const double r = std::abs(z);
    switch (s.tag) {
        case SurfaceTag::disc: return r < 1.0;
        case SurfaceTag::punctured_disc: return r > 0.0 && r < 1.0;
        case SurfaceTag::annulus: return r > s.inner && r < 1.0;
        case SurfaceTag::plane: return true;
        case SurfaceTag::punctured_plane: return r > 0.0;
    }
    return false;
}

double clearance(const ModelSurface& s, Complex z) {
    const double r = std::abs(z);
    switch (s.tag) {
        case SurfaceTag::disc: return 1.0 - r;
        case SurfaceTag::punctured_disc: return std::min(r, 1.0 - r);
        case SurfaceTag::annulus: return std::min(r - s.inner, 1.0 - r);
        case SurfaceTag::plane: return kInf;
        case SurfaceTag::punctured_plane: return r;
    }
    return 0.0;
}

bool is_hyperbolic(const ModelSurface& s) {
    return s.tag != SurfaceTag::plane && s.tag != SurfaceTag::punctured_plane;
}

std::vector<Complex> punctures(const ModelSurface& s) {
    if (s.tag == SurfaceTag::punctured_disc || s.tag == SurfaceTag::punctured_plane) {
        return {Complex{0.0, 0.0}};
    }
    return {};
}

double density(const ModelSurface& s, Complex z) {
    if (!contains(s, z)) {
        throw std::domain_error("density: point outside the open domain of " + surface_name(s));
    }
    return density_or_infinity(s, z);
}

double density_or_infinity(const ModelSurface& s, Complex z) noexcept {
    const double r = std::abs(z);
    switch (s.tag) {
        case SurfaceTag::disc:
            if (!(r < 1.0)) return kInf;
            return 2.0 / (1.0 - r * r);
        case SurfaceTag::punctured_disc: {
            if (!(r > 0.0 && r < 1.0)) return kInf;
            return 1.0 / (r * std::log(1.0 / r));
        }
        case SurfaceTag::annulus: {
            if (!(r > s.inner && r < 1.0)) return kInf;
            const double L = annulus_log_ratio(s);
            const double u = std::log(1.0 / r) / L;  // in (0,1)
            return (pi / L) / (r * std::sin(pi * u));
        }
        case SurfaceTag::plane:
        case SurfaceTag::punctured_plane:
            return contains(s, z) ? 0.0 : kInf;
    }
    return kInf;
}

DensityJet density_jet(const ModelSurface& s, Complex z) {
    if (!contains(s, z)) {
        throw std::domain_error("density_jet: point outside the open domain");
    }
    const double r = std::abs(z);
    switch (s.tag) {
        case SurfaceTag::disc: {
            const double q = 1.0 - r * r;
            return {2.0 / q, 4.0 * r / (q * q)};
        }
        case SurfaceTag::punctured_disc: {
            const double L = std::log(1.0 / r);
            const double v = r * L;
            return {1.0 / v, (1.0 - L) / (v * v)};
        }
        case SurfaceTag::annulus: {
            const double L = annulus_log_ratio(s);
            const double u = std::log(1.0 / r) / L;
            const double su = std::sin(pi * u);
            const double cu = std::cos(pi * u);
            const double val = (pi / L) / (r * su);
            // d/dr [ r sin(pi u) ] = sin(pi u) - (pi/L) cos(pi u)
            const double dval = -(pi / L) * (su - (pi / L) * cu) / (r * r * su * su);
            return {val, dval};
        }
        case SurfaceTag::plane:
        case SurfaceTag::punctured_plane:
            return {0.0, 0.0};
    }
    return {0.0, 0.0};
}

std::array<double, 2> density_gradient(const ModelSurface& s, Complex z) {
    const DensityJet jet = density_jet(s, z);
    const double r = std::abs(z);
    if (r == 0.0) return {0.0, 0.0};  // radial symmetry: stationary at the origin
    return {jet.d_radius * z.real() / r, jet.d_radius * z.imag() / r};
}

const Quadrature& gauss_legendre_01(int order) {
    // Nodes/weights on [-1,1], mapped to [0,1].
    static const auto make = [](std::initializer_list<double> xs,
                                std::initializer_list<double> ws) {
        Quadrature q;
        auto wi = ws.begin();
        for (auto x : xs) {
            q.nodes.push_back(0.5 * (x + 1.0));
            q.weights.push_back(0.5 * *wi++);
        }
        return q;
    };
    static const Quadrature q2 = make({-0.5773502691896257, 0.5773502691896257}, {1.0, 1.0});
    static const Quadrature q4 = make(
        {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563, 0.8611363115940526},
        {0.3478548451374538, 0.6521451548625461, 0.6521451548625461, 0.3478548451374538});
    static const Quadrature q8 = make(
        {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
         0.1834346424956498, 0.5255324099163290, 0.7966664774136267, 0.9602898564975363},
        {0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
         0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763});
    static const Quadrature q16 = make(
        {-0.9894009349916499, -0.9445750230732326, -0.8656312023878318, -0.7554044083550030,
         -0.6178762444026438, -0.4580167776572274, -0.2816035507792589, -0.0950125098376374,
         0.0950125098376374, 0.2816035507792589, 0.4580167776572274, 0.6178762444026438,
         0.7554044083550030, 0.8656312023878318, 0.9445750230732326, 0.9894009349916499},
        {0.0271524594117541, 0.0622535239386479, 0.0951585116824928, 0.1246289712555339,
         0.1495959888165767, 0.1691565193950025, 0.1826034150449236, 0.1894506104550685,
         0.1894506104550685, 0.1826034150449236, 0.1691565193950025, 0.1495959888165767,
         0.1246289712555339, 0.0951585116824928, 0.0622535239386479, 0.0271524594117541});
    switch (order) {
        case 2: return q2;
        case 4: return q4;
        case 8: return q8;
        case 16: return q16;
    }
    throw std::invalid_argument("gauss_legendre_01: supported orders are 2, 4, 8, 16");
}

double curve_length(const ModelSurface& s, std::span<const Complex> vertices,
                    bool closed, int quadrature_order) {
    if (vertices.size() < 2) {
        throw std::invalid_argument("curve_length: need at least two vertices");
    }
    const Quadrature& q = gauss_legendre_01(quadrature_order);
    const size_t n = vertices.size();
    const size_t segments = closed ? n : n - 1;
    double total = 0.0;
    for (size_t i = 0; i < segments; ++i) {
        const Complex p = vertices[i];
        const Complex r = vertices[(i + 1) % n];
        const Complex delta = r - p;
        const double len = std::abs(delta);
        if (len == 0.0) continue;
        double seg = 0.0;
        for (size_t k = 0; k < q.nodes.size(); ++k) {
            const Complex zk = p + q.nodes[k] * delta;
            if (!contains(s, zk)) {
                throw std::domain_error("curve_length: curve leaves the open domain");
            }
            seg += q.weights[k] * density_or_infinity(s, zk);
        }
        total += seg * len;
    }
    return total;
}

double parametric_curve_length(const ModelSurface& s,
                               const std::function<Complex(double)>& f,
                               const std::function<Complex(double)>& df,
                               double t0, double t1, int panels, int quadrature_order) {
    if (panels < 1) throw std::invalid_argument("parametric_curve_length: panels >= 1");
    const Quadrature& q = gauss_legendre_01(quadrature_order);
    const double h = (t1 - t0) / panels;
    double total = 0.0;
    for (int i = 0; i < panels; ++i) {
        const double a = t0 + i * h;
        double seg = 0.0;
        for (size_t k = 0; k < q.nodes.size(); ++k) {
            const double t = a + q.nodes[k] * h;
            const Complex z = f(t);
            if (!contains(s, z)) {
                throw std::domain_error("parametric_curve_length: curve leaves the open domain");
            }
            seg += q.weights[k] * density_or_infinity(s, z) * std::abs(df(t));
        }
        total += seg * h;
    }
    return total;
}

double circle_length(const ModelSurface& s, double rho) {
    return 2.0 * pi * rho * density(s, Complex{rho, 0.0});
}

double curvature_residual(const ModelSurface& s, Complex z, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("curvature_residual: step must be positive");
    if (!is_hyperbolic(s)) {
        throw std::domain_error("curvature_residual: metric vanishes identically");
    }
    if (!contains(s, z) || clearance(s, z) <= 4.0 * step) {
        throw std::domain_error("curvature_residual: insufficient boundary clearance");
    }
    auto loglam = [&](Complex w) { return std::log(density(s, w)); };
    const double h = step;
    const double lap = (loglam(z + Complex{h, 0}) + loglam(z - Complex{h, 0}) +
                        loglam(z + Complex{0, h}) + loglam(z - Complex{0, h}) -
                        4.0 * loglam(z)) /
                       (h * h);
    const double lam = density(s, z);
    const double K = -lap / (lam * lam);
    return K + 1.0;
}

HolomorphicMap disc_identity_map() {
    return {ModelSurface::Disc(), ModelSurface::Disc(),
            [](Complex z) { return z; }, [](Complex) { return Complex{1.0, 0.0}; },
            "identity"};
}

HolomorphicMap disc_to_punctured_disc_covering() {
    auto f = [](Complex z) { return std::exp(-(1.0 + z) / (1.0 - z)); };
    auto df = [f](Complex z) {
        const Complex w = 1.0 - z;
        return f(z) * (-2.0 / (w * w));
    };
    return {ModelSurface::Disc(), ModelSurface::PuncturedDisc(), f, df,
            "exp(-(1+z)/(1-z))"};
}

HolomorphicMap disc_exp_annulus_map(double alpha, double alpha_prime) {
    if (!(alpha > 0.0 && alpha <= alpha_prime)) {
        throw std::invalid_argument("disc_exp_annulus_map: need 0 < alpha <= alpha_prime");
    }
    const double scale = std::exp(-alpha_prime);
    auto f = [alpha, scale](Complex z) { return scale * std::exp(Complex{0, alpha} * z); };
    auto df = [alpha, f](Complex z) { return Complex{0, alpha} * f(z); };
    return {ModelSurface::Disc(), ModelSurface::Annulus(std::exp(-2.0 * alpha_prime)), f, df,
            "exp(i*alpha*z)"};
}

double schwarz_pick_violation(const HolomorphicMap& map, std::span<const Complex> grid) {
    double worst = -kInf;
    for (const Complex z : grid) {
        if (!contains(map.source, z)) {
            throw std::domain_error("schwarz_pick_violation: grid point outside source domain");
        }
        const Complex w = map.f(z);
        if (!contains(map.target, w)) {
            throw std::domain_error("schwarz_pick_violation: image leaves target domain");
        }
        const double lhs = density(map.target, w) * std::abs(map.df(z));
        const double rhs = density(map.source, z);
        worst = std::max(worst, lhs - rhs);
    }
    return worst;
}

std::vector<Complex> disc_grid(int n_r, int n_theta, double max_r) {
    std::vector<Complex> grid;
    grid.reserve(static_cast<size_t>(n_r) * n_theta);
    for (int i = 1; i <= n_r; ++i) {
        const double r = max_r * i / n_r;
        for (int j = 0; j < n_theta; ++j) {
            const double th = 2.0 * pi * j / n_theta;
            grid.push_back(std::polar(r, th));
        }
    }
    return grid;
}

}  // namespace hyplen
