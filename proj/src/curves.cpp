#include "hyplen/curves.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hyplen {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using std::numbers::pi;

std::vector<Complex> winding_centers(const ModelSurface& s) {
    switch (s.tag) {
        case SurfaceTag::punctured_disc:
        case SurfaceTag::punctured_plane:
        case SurfaceTag::annulus:
            return {Complex{0.0, 0.0}};
        default:
            return {};
    }
}

double total_euclidean_length(std::span<const Complex> v) {
    double total = 0.0;
    for (size_t i = 0; i < v.size(); ++i) {
        total += std::abs(v[(i + 1) % v.size()] - v[i]);
    }
    return total;
}

// Discrete objective: the same composite quadrature as curve_length, but
// returning +inf when a node leaves the domain (line-search rejection).
double length_or_inf(const ModelSurface& s, std::span<const Complex> v,
                     const Quadrature& q) {
    const size_t n = v.size();
    double total = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const Complex p = v[i];
        const Complex delta = v[(i + 1) % n] - p;
        const double len = std::abs(delta);
        double seg = 0.0;
        for (size_t k = 0; k < q.nodes.size(); ++k) {
            const double lam = density_or_infinity(s, p + q.nodes[k] * delta);
            if (!std::isfinite(lam)) return kInf;
            seg += q.weights[k] * lam;
        }
        total += seg * len;
    }
    return total;
}

// Exact gradient of the quadrature objective with respect to each vertex.
void gradient(const ModelSurface& s, std::span<const Complex> v,
              const Quadrature& q, std::vector<Complex>& grad) {
    const size_t n = v.size();
    grad.assign(n, Complex{0.0, 0.0});
    for (size_t i = 0; i < n; ++i) {
        const size_t j = (i + 1) % n;
        const Complex p = v[i];
        const Complex delta = v[j] - p;
        const double len = std::abs(delta);
        if (len == 0.0) continue;
        const Complex unit = delta / len;
        double lam_sum = 0.0;
        Complex gp{0, 0}, gr{0, 0};
        for (size_t k = 0; k < q.nodes.size(); ++k) {
            const double t = q.nodes[k];
            const Complex zk = p + t * delta;
            const DensityJet jet = density_jet(s, zk);
            const double rho = std::abs(zk);
            const Complex glam = rho > 0.0 ? Complex{jet.d_radius * zk.real() / rho,
                                                     jet.d_radius * zk.imag() / rho}
                                           : Complex{0.0, 0.0};
            lam_sum += q.weights[k] * jet.value;
            gp += q.weights[k] * (1.0 - t) * glam;
            gr += q.weights[k] * t * glam;
        }
        grad[i] += gp * len - lam_sum * unit;
        grad[j] += gr * len + lam_sum * unit;
    }
}

double dot(std::span<const Complex> a, std::span<const Complex> b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        s += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    }
    return s;
}

// Scale-invariant residual: the differential of length against unit
// hyperbolic vertex displacements, sup over vertices.
double scaled_gradient_norm(const ModelSurface& s, std::span<const Complex> x,
                            std::span<const Complex> g) {
    double m = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        const double lam = density_or_infinity(s, x[i]);
        m = std::max(m, std::abs(g[i]) / lam);
    }
    return m;
}

bool windings_match(const ModelSurface& s, std::span<const Complex> a,
                    std::span<const Complex> b) {
    for (const Complex c : winding_centers(s)) {
        if (winding_number(a, c) != winding_number(b, c)) return false;
    }
    return true;
}

struct CyclicSpline {
    std::vector<Complex> p;  // vertices
    std::vector<Complex> m;  // second derivatives at vertices

    Complex value(size_t seg, double t) const {
        const size_t n = p.size();
        const Complex a = p[seg], b = p[(seg + 1) % n];
        const Complex ma = m[seg], mb = m[(seg + 1) % n];
        const double u = 1.0 - t;
        return a * u + b * t + (ma * (u * u * u - u) + mb * (t * t * t - t)) / 6.0;
    }
    Complex derivative(size_t seg, double t) const {
        const size_t n = p.size();
        const Complex a = p[seg], b = p[(seg + 1) % n];
        const Complex ma = m[seg], mb = m[(seg + 1) % n];
        const double u = 1.0 - t;
        return (b - a) + (ma * (1.0 - 3.0 * u * u) + mb * (3.0 * t * t - 1.0)) / 6.0;
    }
};

// Periodic natural cubic spline on a uniform parameter, cyclic tridiagonal
// system solved by Sherman-Morrison.
CyclicSpline periodic_spline(std::span<const Complex> pts) {
    const size_t n = pts.size();
    std::vector<Complex> rhs(n);
    for (size_t i = 0; i < n; ++i) {
        rhs[i] = 6.0 * (pts[(i + n - 1) % n] - 2.0 * pts[i] + pts[(i + 1) % n]);
    }
    // System: m[i-1] + 4 m[i] + m[i+1] = rhs[i], cyclic.
    auto solve_tri = [&](std::span<const Complex> d) {
        // Tridiagonal with diag entries b[], off-diag 1, after corner removal.
        std::vector<double> diag(n, 4.0);
        diag[0] += 1.0;      // T' = A - u v^T with gamma = -1
        diag[n - 1] += 1.0;  // -(alpha beta / gamma)
        std::vector<Complex> x(n);
        std::vector<double> cp(n);
        std::vector<Complex> dp(n);
        cp[0] = 1.0 / diag[0];
        dp[0] = d[0] / diag[0];
        for (size_t i = 1; i < n; ++i) {
            const double denom = diag[i] - cp[i - 1];
            cp[i] = 1.0 / denom;
            dp[i] = (d[i] - dp[i - 1]) / denom;
        }
        x[n - 1] = dp[n - 1];
        for (size_t i = n - 1; i-- > 0;) {
            x[i] = dp[i] - cp[i] * x[i + 1];
        }
        return x;
    };
    std::vector<Complex> u(n, Complex{0, 0});
    u[0] = Complex{-1.0, 0.0};  // gamma
    u[n - 1] = Complex{1.0, 0.0};
    const std::vector<Complex> y = solve_tri(rhs);
    const std::vector<Complex> z = solve_tri(u);
    // v = (1, 0, ..., 0, -1/gamma) -> v.x = x[0] - x[n-1]
    const Complex vy = y[0] - y[n - 1];
    const Complex vz = z[0] - z[n - 1];
    std::vector<Complex> m(n);
    const Complex factor = vy / (1.0 + vz);
    for (size_t i = 0; i < n; ++i) m[i] = y[i] - factor * z[i];
    CyclicSpline spl;
    spl.p.assign(pts.begin(), pts.end());
    spl.m = std::move(m);
    return spl;
}

}  // namespace

ClosedPolyline::ClosedPolyline(std::vector<Complex> verts, ModelSurface dom)
    : vertices(std::move(verts)), domain(dom) {
    if (vertices.size() < 8) {
        throw std::invalid_argument("ClosedPolyline: need at least 8 vertices");
    }
    for (size_t i = 0; i < vertices.size(); ++i) {
        if (!contains(domain, vertices[i])) {
            throw std::domain_error("ClosedPolyline: vertex " + std::to_string(i) +
                                    " not strictly interior");
        }
        if (vertices[i] == vertices[(i + 1) % vertices.size()]) {
            throw std::invalid_argument("ClosedPolyline: consecutive vertices coincide");
        }
    }
}

ClosedPolyline make_circle(const ModelSurface& domain, double rho, int n, Complex center) {
    if (n < 8) throw std::invalid_argument("make_circle: need at least 8 vertices");
    std::vector<Complex> v(n);
    for (int i = 0; i < n; ++i) {
        v[i] = center + std::polar(rho, 2.0 * pi * i / n);
    }
    return ClosedPolyline(std::move(v), domain);
}

int winding_number(std::span<const Complex> vertices, Complex center) {
    double total = 0.0;
    const size_t n = vertices.size();
    for (size_t i = 0; i < n; ++i) {
        const Complex a = vertices[i] - center;
        const Complex b = vertices[(i + 1) % n] - center;
        if (a == Complex{0.0, 0.0} || b == Complex{0.0, 0.0}) {
            throw std::invalid_argument("winding_number: vertex equals the center");
        }
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * pi)));
}

int winding_number(const ClosedPolyline& curve, Complex center) {
    return winding_number(curve.vertices, center);
}

double length(const ClosedPolyline& curve, int quadrature_order) {
    return curve_length(curve.domain, curve.vertices, true, quadrature_order);
}

bool is_embedded(const ClosedPolyline& curve) {
    const auto& v = curve.vertices;
    const size_t n = v.size();
    auto orient = [](Complex a, Complex b, Complex c) {
        const double val = (b.real() - a.real()) * (c.imag() - a.imag()) -
                           (b.imag() - a.imag()) * (c.real() - a.real());
        return (val > 0.0) - (val < 0.0);
    };
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            // skip adjacent segments (shared endpoint)
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            const Complex a = v[i], b = v[(i + 1) % n];
            const Complex c = v[j], d = v[(j + 1) % n];
            if (orient(a, b, c) * orient(a, b, d) < 0 &&
                orient(c, d, a) * orient(c, d, b) < 0) {
                return false;
            }
        }
    }
    return true;
}

std::vector<Complex> resample_uniform(std::span<const Complex> vertices) {
    const size_t n = vertices.size();
    std::vector<double> cum(n + 1, 0.0);
    for (size_t i = 0; i < n; ++i) {
        cum[i + 1] = cum[i] + std::abs(vertices[(i + 1) % n] - vertices[i]);
    }
    const double total = cum[n];
    std::vector<Complex> out(n);
    size_t seg = 0;
    for (size_t j = 0; j < n; ++j) {
        const double target = total * j / n;
        while (seg + 1 < n && cum[seg + 1] < target) ++seg;
        const double seg_len = cum[seg + 1] - cum[seg];
        const double t = seg_len > 0.0 ? (target - cum[seg]) / seg_len : 0.0;
        out[j] = vertices[seg] + t * (vertices[(seg + 1) % n] - vertices[seg]);
    }
    return out;
}

double spline_refined_length(const ModelSurface& domain, std::span<const Complex> vertices,
                             int quadrature_order) {
    const CyclicSpline spl = periodic_spline(vertices);
    const Quadrature& q = gauss_legendre_01(quadrature_order);
    double total = 0.0;
    for (size_t seg = 0; seg < vertices.size(); ++seg) {
        double acc = 0.0;
        for (size_t k = 0; k < q.nodes.size(); ++k) {
            const Complex z = spl.value(seg, q.nodes[k]);
            const double lam = density_or_infinity(domain, z);
            if (!std::isfinite(lam)) {
                // spline overshoot left the domain; fall back to the polygon
                return curve_length(domain, vertices, true, quadrature_order);
            }
            acc += q.weights[k] * lam * std::abs(spl.derivative(seg, q.nodes[k]));
        }
        total += acc;
    }
    return total;
}

ShorteningResult shorten(const ClosedPolyline& curve, const ShortenOptions& opt) {
    const ModelSurface& s = curve.domain;
    if (!is_hyperbolic(s)) {
        throw std::domain_error("shorten: surface is not hyperbolic (density vanishes)");
    }
    const Quadrature& q = gauss_legendre_01(opt.quadrature_order);
    const std::vector<Complex> punct = punctures(s);

    std::vector<Complex> x = curve.vertices;
    const size_t n = x.size();
    std::vector<Complex> g, dir(n), trial(n), prev_x, prev_d;
    gradient(s, x, q, g);
    double L = length_or_inf(s, x, q);
    if (!std::isfinite(L)) {
        throw std::domain_error("shorten: initial curve leaves the domain");
    }

    std::vector<double> trace{L};
    ShortenStatus status = ShortenStatus::max_iterations;
    bool escape_armed = false;
    int armed_iter = -1;
    double step = 0.0;

    // Steepest descent in the conformal metric: the direction is the
    // length gradient measured against hyperbolic vertex displacements,
    // which keeps the iteration conditioned across the metric's scales.
    auto descent_direction = [&]() {
        for (size_t i = 0; i < n; ++i) {
            const double lam = density_or_infinity(s, x[i]);
            dir[i] = -g[i] / (lam * lam);
        }
    };
    auto min_puncture_distance = [&]() {
        double m = kInf;
        for (const Complex p : punct) {
            for (const Complex v : x) m = std::min(m, std::abs(v - p));
        }
        return m;
    };
    auto decreasing_over_window = [&](int w) {
        const size_t k = trace.size();
        return k > static_cast<size_t>(w) && trace[k - 1 - w] - trace[k - 1] > 0.0;
    };

    int iter = 0;
    for (; iter < opt.max_iterations; ++iter) {
        const double grad_norm = scaled_gradient_norm(s, x, g);
        const double punct_dist = punct.empty() ? kInf : min_puncture_distance();

        // Escape branch: the infimum-0 classes have no minimizer; detect the
        // funnel, then confirm with a fixed run of monotone iterations.
        if (!escape_armed && punct_dist < opt.escape_clearance &&
            decreasing_over_window(opt.escape_window)) {
            escape_armed = true;
            armed_iter = iter;
        }
        if (escape_armed && iter - armed_iter >= opt.escape_confirm_iterations) {
            status = ShortenStatus::escaped_to_puncture;
            break;
        }
        if (!escape_armed && punct_dist > 100.0 * opt.escape_clearance &&
            total_euclidean_length(x) < opt.collapse_floor) {
            // point-like curve: stationary for its (contractible) class
            status = ShortenStatus::converged;
            g.assign(n, Complex{0.0, 0.0});
            break;
        }
        if (grad_norm < opt.gradient_tolerance) {
            status = ShortenStatus::converged;
            break;
        }

        // Inside the escape funnel there is no minimizer to home in on.
        // The stable motion there is the homothety toward the puncture: it
        // is the funnel component of the gradient, excites none of the
        // stiff bending modes, and lets the clearance decay geometrically.
        bool funnel_mode = false;
        if (punct_dist < 16.0 * opt.escape_clearance) {
            Complex p{0.0, 0.0};
            double best = kInf;
            for (const Complex c : punct) {
                for (const Complex v : x) {
                    if (std::abs(v - c) < best) {
                        best = std::abs(v - c);
                        p = c;
                    }
                }
            }
            double slope = 0.0;
            for (size_t i = 0; i < n; ++i) {
                const Complex di = p - x[i];
                slope -= g[i].real() * di.real() + g[i].imag() * di.imag();
            }
            if (slope > 0.0) {  // radial contraction decreases length
                for (size_t i = 0; i < n; ++i) dir[i] = p - x[i];
                funnel_mode = true;
            }
        }
        if (!funnel_mode) descent_direction();

        // Step cap: half the clearance per vertex preserves winding data.
        double t_cap = kInf;
        double dir_sup = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double di = std::abs(dir[i]);
            dir_sup = std::max(dir_sup, di);
            if (di > 0.0) t_cap = std::min(t_cap, 0.5 * clearance(s, x[i]) / di);
        }
        double t;
        if (funnel_mode) {
            t = t_cap;
        } else if (!prev_x.empty()) {
            // Barzilai-Borwein trial step from the previous move
            double ss = 0.0, sy = 0.0;
            for (size_t i = 0; i < n; ++i) {
                const Complex sv = x[i] - prev_x[i];
                const Complex yv = dir[i] - prev_d[i];
                ss += std::norm(sv);
                sy -= sv.real() * yv.real() + sv.imag() * yv.imag();
            }
            t = (sy > 0.0 && std::isfinite(ss / sy)) ? ss / sy : 2.0 * step;
        } else {
            t = step > 0.0 ? step : 0.1;
        }
        if (!(t > 0.0) || !std::isfinite(t)) t = 0.1;
        t = std::min(t, t_cap);

        const double gd = -dot(g, dir);  // positive: directional decrease rate
        const double curve_scale = total_euclidean_length(x);
        double L_new = kInf;
        bool accepted = false;
        bool at_floor = false;
        for (int back = 0; back < 80; ++back) {
            if (t * gd <= 64.0 * std::numeric_limits<double>::epsilon() * L ||
                t * dir_sup < opt.step_tolerance * curve_scale) {
                at_floor = true;  // no representable progress along this direction
                break;
            }
            for (size_t i = 0; i < n; ++i) trial[i] = x[i] + t * dir[i];
            L_new = length_or_inf(s, trial, q);
            if (L_new <= L - 1e-4 * t * gd && windings_match(s, x, trial)) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) {
            if (escape_armed) {
                status = ShortenStatus::escaped_to_puncture;
            } else if (at_floor) {
                // converged to the numerical minimum of the discrete objective
                status = ShortenStatus::converged;
            } else {
                status = ShortenStatus::max_iterations;
            }
            break;
        }

        if (funnel_mode) {
            prev_x.clear();  // homothety steps are not BB curvature samples
            prev_d.clear();
        } else {
            prev_x = x;
            prev_d = dir;
        }
        x.swap(trial);
        L = L_new;
        step = t;
        gradient(s, x, q, g);
        trace.push_back(L);

        if ((iter + 1) % opt.resample_interval == 0) {
            std::vector<Complex> rs = resample_uniform(x);
            const double L_rs = length_or_inf(s, rs, q);
            if (L_rs <= L && windings_match(s, x, rs)) {
                x.swap(rs);
                L = L_rs;
                gradient(s, x, q, g);
                prev_x.clear();  // BB memory is stale across a resample
                prev_d.clear();
            }
        }
    }
    if (iter >= opt.max_iterations) status = ShortenStatus::max_iterations;

    const double grad_norm = scaled_gradient_norm(s, x, g);
    ClosedPolyline final_curve(std::move(x), s);
    const double refined = spline_refined_length(s, final_curve.vertices, opt.quadrature_order);
    const bool embedded = is_embedded(final_curve);
    return ShorteningResult{std::move(final_curve), refined,   status,
                            std::move(trace),       grad_norm, static_cast<int>(iter),
                            embedded};
}

ShorteningResult shorten(const ClosedPolyline& curve, double step_tolerance,
                         double gradient_tolerance, int max_iterations) {
    ShortenOptions opt;
    opt.step_tolerance = step_tolerance;
    opt.gradient_tolerance = gradient_tolerance;
    opt.max_iterations = max_iterations;
    return shorten(curve, opt);
}

StableLength stable_length(const ClosedPolyline& curve, const ShortenOptions& options) {
    const ShorteningResult res = shorten(curve, options);
    if (res.status == ShortenStatus::escaped_to_puncture) {
        return {0.0, false};
    }
    return {res.final_length, res.status == ShortenStatus::converged};
}

}  // namespace hyplen
