#include "vortex/surface.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace vortex {

namespace {

constexpr double log2_ = 0.69314718055994530941723212145817657;

bool finite(double x) { return std::isfinite(x); }
bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// log |sin(pi u)| through the dominant exponential, so it stays accurate and
// overflow-free for large |Im u|.
double log_abs_sin_pi(Complex u) {
    const double y = u.imag();
    if (y > 0.0) {
        const Complex w = std::exp(Complex(0.0, 2.0 * pi) * u);  // |w| = e^{-2 pi y} < 1
        return pi * y - log2_ + std::log(std::abs(1.0 - w));
    }
    if (y < 0.0) {
        const Complex w = std::exp(Complex(0.0, -2.0 * pi) * u);
        return -pi * y - log2_ + std::log(std::abs(1.0 - w));
    }
    return std::log(std::abs(std::sin(pi * u.real())));
}

// pi * cot(pi u), evaluated from whichever of e^{2 pi i u}, e^{-2 pi i u} has
// modulus <= 1 (the two rational forms agree identically).
Complex pi_cot_pi(Complex u) {
    if (u.imag() >= 0.0) {
        const Complex w = std::exp(Complex(0.0, 2.0 * pi) * u);
        return Complex(0.0, pi) * (w + 1.0) / (w - 1.0);
    }
    const Complex v = std::exp(Complex(0.0, -2.0 * pi) * u);
    return Complex(0.0, pi) * (1.0 + v) / (1.0 - v);
}

// sum_{n>=1} log|1 - e^{2 pi i (n tau + d)}| + log|1 - e^{2 pi i (n tau - d)}|
// for |Im d| <= Im(tau)/2; every term then has modulus <= e^{-pi (2n-1) Im tau}.
double lattice_tail_log(Complex d, Complex tau) {
    double total = 0.0;
    for (int n = 1; n <= 4000; ++n) {
        const Complex e1 = std::exp(Complex(0.0, 2.0 * pi) * (double(n) * tau + d));
        const Complex e2 = std::exp(Complex(0.0, 2.0 * pi) * (double(n) * tau - d));
        total += std::log(std::abs(1.0 - e1)) + std::log(std::abs(1.0 - e2));
        if (std::abs(e1) + std::abs(e2) < 1e-13) return total;
    }
    throw numeric_error("lattice sum did not converge; modulus too close to the real axis");
}

// d/dd of lattice_tail_log, as a complex derivative of the log of the product.
Complex lattice_tail_dlog(Complex d, Complex tau) {
    Complex total = 0.0;
    for (int n = 1; n <= 4000; ++n) {
        const Complex e1 = std::exp(Complex(0.0, 2.0 * pi) * (double(n) * tau + d));
        const Complex e2 = std::exp(Complex(0.0, 2.0 * pi) * (double(n) * tau - d));
        total += Complex(0.0, -2.0 * pi) * e1 / (1.0 - e1) + Complex(0.0, 2.0 * pi) * e2 / (1.0 - e2);
        if (std::abs(e1) + std::abs(e2) < 1e-13) return total;
    }
    throw numeric_error("lattice sum did not converge; modulus too close to the real axis");
}

}  // namespace

double stereo_distance(const ExtComplex& a, const ExtComplex& b) {
    if (a.infinite && b.infinite) return 0.0;
    if (a.infinite || b.infinite) {
        const Complex w = a.infinite ? b.z : a.z;
        return 2.0 * std::asin(std::min(1.0, 1.0 / std::sqrt(1.0 + std::norm(w))));
    }
    const double num = std::abs(a.z - b.z);
    const double den = std::sqrt((1.0 + std::norm(a.z)) * (1.0 + std::norm(b.z)));
    return 2.0 * std::asin(std::min(1.0, num / den));
}

Surface::Surface(SurfaceKind kind, Complex tau) : kind_(kind), tau_(tau) {
    if (kind_ == SurfaceKind::flat_torus) {
        if (!finite(tau_) || !(tau_.imag() > 0.0))
            throw validation_error("torus modulus must be finite with positive imaginary part");
        // Lagrange reduction of the basis {1, tau}: afterwards |a| <= |b| and
        // |<a,b>| <= |a|^2 / 2, which makes the 3x3 neighbor scan below an
        // exact nearest-translate search.
        Complex a{1.0, 0.0}, b = tau_;
        if (std::abs(a) > std::abs(b)) std::swap(a, b);
        for (int iter = 0; iter < 64; ++iter) {
            const double mu =
                std::round((b.real() * a.real() + b.imag() * a.imag()) / std::norm(a));
            b -= mu * a;
            if (std::abs(b) >= std::abs(a)) break;
            std::swap(a, b);
        }
        red_a_ = a;
        red_b_ = b;
    }
}

Surface Surface::sphere() { return Surface(SurfaceKind::sphere); }
Surface Surface::flat_torus(Complex tau) { return Surface(SurfaceKind::flat_torus, tau); }
Surface Surface::projective_plane() { return Surface(SurfaceKind::projective_plane); }

Complex Surface::tau() const {
    if (kind_ != SurfaceKind::flat_torus) throw validation_error("tau() is only defined for the flat torus");
    return tau_;
}

double Surface::area() const {
    switch (kind_) {
        case SurfaceKind::sphere: return 4.0 * pi;
        case SurfaceKind::flat_torus: return tau_.imag();
        case SurfaceKind::projective_plane: return 2.0 * pi;
    }
    throw validation_error("unknown surface kind");
}

double Surface::gaussian_curvature() const {
    return kind_ == SurfaceKind::flat_torus ? 0.0 : 1.0;
}

SurfacePoint Surface::point(const Vec3& v) const {
    if (kind_ == SurfaceKind::flat_torus)
        throw validation_error("torus points are constructed from complex coordinates");
    if (!finite(v[0]) || !finite(v[1]) || !finite(v[2]))
        throw validation_error("point coordinates must be finite");
    SurfacePoint p;
    p.v = normalized(v);
    if (kind_ == SurfaceKind::projective_plane) {
        for (double c : p.v) {
            if (std::abs(c) > 1e-12) {
                if (c < 0.0) p.v = -p.v;
                break;
            }
        }
    }
    return p;
}

SurfacePoint Surface::point(Complex z) const {
    if (kind_ != SurfaceKind::flat_torus)
        throw validation_error("complex coordinates only construct torus points");
    if (!finite(z)) throw validation_error("point coordinates must be finite");
    double t = z.imag() / tau_.imag();
    double s = z.real() - t * tau_.real();
    s -= std::floor(s);
    t -= std::floor(t);
    SurfacePoint p;
    p.z = Complex(s + t * tau_.real(), t * tau_.imag());
    return p;
}

SurfacePoint Surface::lift(const Vec3& v) const {
    if (kind_ == SurfaceKind::flat_torus)
        throw validation_error("lift() applies to the spherical kinds only");
    if (!finite(v[0]) || !finite(v[1]) || !finite(v[2]))
        throw validation_error("point coordinates must be finite");
    SurfacePoint p;
    p.v = normalized(v);
    return p;
}

void Surface::check_point(const SurfacePoint& x) const {
    if (kind_ == SurfaceKind::flat_torus) {
        if (!finite(x.z)) throw validation_error("torus point is not finite");
        return;
    }
    if (!finite(x.v[0]) || !finite(x.v[1]) || !finite(x.v[2]))
        throw validation_error("point is not finite");
    if (std::abs(norm(x.v) - 1.0) > 1e-9)
        throw validation_error("point is off the unit sphere by more than 1e-9");
}

namespace {

double sphere_angle(const Vec3& a, const Vec3& b) {
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

double sphere_green(double cos_d) {
    // -(1/2pi) log sin(d/2) - 1/(4pi), written in terms of cos d.
    const double s2 = std::max(0.0, 0.5 * (1.0 - cos_d));  // sin^2(d/2)
    return -std::log(s2) / (4.0 * pi) - 1.0 / (4.0 * pi);
}

// Regular part on the sphere in cancellation-free form:
// H(d) = -(1/2pi) log( sin(d/2) / (d/2) ) + log(2)/(2pi) - 1/(4pi).
double sphere_regular(double d) {
    const double half = 0.5 * d;
    const double sinc = half < 1e-8 ? 1.0 - half * half / 6.0 : std::sin(half) / half;
    return -std::log(sinc) / (2.0 * pi) + log2_ / (2.0 * pi) - 1.0 / (4.0 * pi);
}

Vec3 sphere_grad_green(const Vec3& x, const Vec3& p) {
    // gradient in x of -(1/4pi) log((1 - x.p)/2): tangential part of p over
    // 4 pi (1 - x.p). Vanishes smoothly at the antipode.
    const double t = dot(x, p);
    const Vec3 p_t = p - t * x;
    return (1.0 / (4.0 * pi * (1.0 - t))) * p_t;
}

}  // namespace

double Surface::geodesic_distance(const SurfacePoint& a, const SurfacePoint& b) const {
    check_point(a);
    check_point(b);
    switch (kind_) {
        case SurfaceKind::sphere:
            return sphere_angle(a.v, b.v);
        case SurfaceKind::projective_plane:
            return std::min(sphere_angle(a.v, b.v), sphere_angle(a.v, -b.v));
        case SurfaceKind::flat_torus: {
            const Complex d = a.z - b.z;
            const double det = red_a_.real() * red_b_.imag() - red_a_.imag() * red_b_.real();
            const double al = (d.real() * red_b_.imag() - d.imag() * red_b_.real()) / det;
            const double be = (red_a_.real() * d.imag() - red_a_.imag() * d.real()) / det;
            const double m0 = std::round(al), n0 = std::round(be);
            double best = std::abs(d - m0 * red_a_ - n0 * red_b_);
            for (int dm = -1; dm <= 1; ++dm)
                for (int dn = -1; dn <= 1; ++dn)
                    best = std::min(best,
                                    std::abs(d - (m0 + dm) * red_a_ - (n0 + dn) * red_b_));
            return best;
        }
    }
    throw validation_error("unknown surface kind");
}

namespace {

// Representative of u in the centered cell {s + t tau : s, t in [-1/2, 1/2)};
// guarantees |Im| <= Im(tau)/2, which the lattice tails need.
Complex centered_rep(Complex u, Complex tau) {
    double t = u.imag() / tau.imag();
    double s = u.real() - t * tau.real();
    s -= std::floor(s + 0.5);
    t -= std::floor(t + 0.5);
    return Complex(s + t * tau.real(), t * tau.imag());
}

double torus_green_at(Complex d_hat, Complex tau) {
    const double f = log_abs_sin_pi(d_hat) + lattice_tail_log(d_hat, tau);
    const double y = d_hat.imag();
    return -f / (2.0 * pi) + y * y / (2.0 * tau.imag()) + tau.imag() / 12.0 - log2_ / (2.0 * pi);
}

}  // namespace

double Surface::greens(const SurfacePoint& x, const SurfacePoint& p) const {
    check_point(x);
    check_point(p);
    const double d = geodesic_distance(x, p);
    if (d < collision_tolerance)
        throw singularity_error("Green's function evaluated at a collision");
    switch (kind_) {
        case SurfaceKind::sphere:
            return sphere_green(dot(x.v, p.v));
        case SurfaceKind::projective_plane:
            return sphere_green(dot(x.v, p.v)) + sphere_green(-dot(x.v, p.v));
        case SurfaceKind::flat_torus:
            return torus_green_at(centered_rep(x.z - p.z, tau_), tau_);
    }
    throw validation_error("unknown surface kind");
}

double Surface::greens_regular(const SurfacePoint& x, const SurfacePoint& p) const {
    check_point(x);
    check_point(p);
    const double d = geodesic_distance(x, p);
    switch (kind_) {
        case SurfaceKind::sphere:
            return sphere_regular(d);
        case SurfaceKind::projective_plane: {
            // The nearer lift carries the singularity; the farther one is a
            // plain Green's term. Distance to the farther lift is pi - d.
            const double t = dot(x.v, p.v);
            const double near_t = std::abs(t);
            return sphere_regular(std::acos(std::min(1.0, near_t))) + sphere_green(-near_t);
        }
        case SurfaceKind::flat_torus: {
            const Complex d_hat = centered_rep(x.z - p.z, tau_);
            if (d > 0.25 * std::abs(red_a_))
                return torus_green_at(d_hat, tau_) + std::log(d) / (2.0 * pi);
            // Near the diagonal the centered representative is the nearest
            // translate, so |d_hat| = d and the log cancels inside the sine:
            // F - log d = log|pi sinc(pi d_hat)| + lattice tail.
            const Complex w = pi * d_hat;
            const double log_sinc =
                std::abs(w) < 1e-8 ? -std::norm(w) / 6.0 : std::log(std::abs(std::sin(w) / w));
            const double f_minus_log = std::log(pi) + log_sinc + lattice_tail_log(d_hat, tau_);
            const double y = d_hat.imag();
            return -f_minus_log / (2.0 * pi) + y * y / (2.0 * tau_.imag()) + tau_.imag() / 12.0 -
                   log2_ / (2.0 * pi);
        }
    }
    throw validation_error("unknown surface kind");
}

TangentVector Surface::grad_greens(const SurfacePoint& x, const SurfacePoint& p) const {
    check_point(x);
    check_point(p);
    const double d = geodesic_distance(x, p);
    if (d < collision_tolerance)
        throw singularity_error("Green's gradient evaluated at a collision");
    TangentVector g;
    switch (kind_) {
        case SurfaceKind::sphere:
            g.v = sphere_grad_green(x.v, p.v);
            return g;
        case SurfaceKind::projective_plane:
            g.v = sphere_grad_green(x.v, p.v) + sphere_grad_green(x.v, -p.v);
            return g;
        case SurfaceKind::flat_torus: {
            const Complex d_hat = centered_rep(x.z - p.z, tau_);
            const Complex fp = pi_cot_pi(d_hat) + lattice_tail_dlog(d_hat, tau_);
            // grad log|f(u)| = conj(f'/f); the quadratic correction adds the
            // vertical component Im(u)/Im(tau).
            g.z = -std::conj(fp) / (2.0 * pi) + Complex(0.0, d_hat.imag() / tau_.imag());
            return g;
        }
    }
    throw validation_error("unknown surface kind");
}

std::array<TangentVector, 2> Surface::tangent_frame(const SurfacePoint& x) const {
    check_point(x);
    std::array<TangentVector, 2> frame;
    if (kind_ == SurfaceKind::flat_torus) {
        frame[0].z = Complex(1.0, 0.0);
        frame[1].z = Complex(0.0, 1.0);
        return frame;
    }
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(x.v[i]) < std::abs(x.v[k])) k = i;
    Vec3 ek{0.0, 0.0, 0.0};
    ek[k] = 1.0;
    const Vec3 e1 = normalized(cross(x.v, ek));
    frame[0].v = e1;
    frame[1].v = cross(x.v, e1);
    return frame;
}

SurfacePoint Surface::retract(const SurfacePoint& x, const TangentVector& u) const {
    check_point(x);
    if (kind_ == SurfaceKind::flat_torus) return point(x.z + u.z);
    return point(x.v + u.v);
}

TangentVector Surface::rotate90(const SurfacePoint& x, const TangentVector& u) const {
    check_point(x);
    TangentVector r;
    if (kind_ == SurfaceKind::flat_torus) {
        r.z = Complex(0.0, 1.0) * u.z;
        return r;
    }
    r.v = cross(x.v, u.v);
    return r;
}

}  // namespace vortex
