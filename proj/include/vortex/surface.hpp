#pragma once

#include <array>

#include "vortex/common.hpp"

namespace vortex {

enum class SurfaceKind { sphere, flat_torus, projective_plane };

// A point on one of the supported closed surfaces. Both slots are stored but
// only the one matching the surface kind is meaningful:
//   sphere:           unit vector v
//   flat_torus:       z = s + t*tau with s, t in [0,1)
//   projective_plane: unit vector v, sign-canonicalized (the first component
//                     with |component| > 1e-12 is positive)
// Construct through Surface::point / Surface::lift, which validate and
// normalize; hand-rolled instances are rejected by the evaluation routines
// when they are off the surface by more than 1e-9.
struct SurfacePoint {
    Vec3 v{0.0, 0.0, 0.0};
    Complex z{0.0, 0.0};
};

// Tangent vector at a point, same slot convention as SurfacePoint. On the
// torus the complex slot encodes the (d/dx, d/dy) components as re + i*im.
struct TangentVector {
    Vec3 v{0.0, 0.0, 0.0};
    Complex z{0.0, 0.0};
};

// Point of the extended plane (stereographic chart); `infinite` marks the
// image of the projection pole.
struct ExtComplex {
    Complex z{0.0, 0.0};
    bool infinite = false;
    static ExtComplex of(Complex w) { return {w, false}; }
    static ExtComplex inf() { return {Complex{0.0, 0.0}, true}; }
};

// Geodesic distance on the unit sphere between the preimages of two
// stereographic coordinates. Symmetric, and continuous up to the pole.
double stereo_distance(const ExtComplex& a, const ExtComplex& b);

// One of the three closed model surfaces, with its Green's function.
//
// The Green's function G solves  lap G(.,p) = -delta_p + 1/area  and is
// normalized to have zero mean over the surface in every case:
//   sphere:           G = -(1/2pi) log sin(d/2) - 1/(4pi)
//   flat_torus:       lattice sum in product form, accelerated so terms decay
//                     like exp(-2 pi n Im tau); truncated at 1e-12 relative
//   projective_plane: sum of the two sphere lifts (already mean-zero)
// The regular part H(x,p) = G(x,p) + (1/2pi) log d(x,p) extends smoothly to
// the diagonal and is evaluated in a cancellation-free form.
class Surface {
public:
    static Surface sphere();
    static Surface flat_torus(Complex tau);  // requires Im tau > 0
    static Surface projective_plane();

    SurfaceKind kind() const { return kind_; }
    Complex tau() const;  // torus modulus; throws for the other kinds
    double area() const;
    double gaussian_curvature() const;
    // Integral of the curvature over the surface; topological, so it doubles
    // as a sanity invariant (sphere 4pi, torus 0, projective plane 2pi).
    double total_curvature() const { return gaussian_curvature() * area(); }

    // Factories. point() canonicalizes (normalizes the vector, reduces torus
    // coordinates to the fundamental domain, fixes the projective sign).
    // lift() skips projective sign canonicalization: flows on the projective
    // plane are integrated on the double cover and only canonicalized on
    // export, because the quarter-turn J below is orientation-sensitive and
    // does not commute with the antipodal map.
    SurfacePoint point(const Vec3& v) const;
    SurfacePoint point(Complex z) const;
    SurfacePoint lift(const Vec3& v) const;

    double geodesic_distance(const SurfacePoint& a, const SurfacePoint& b) const;
    double greens(const SurfacePoint& x, const SurfacePoint& p) const;
    double greens_regular(const SurfacePoint& x, const SurfacePoint& p) const;
    // Riemannian gradient of greens in its first argument.
    TangentVector grad_greens(const SurfacePoint& x, const SurfacePoint& p) const;

    // Orthonormal tangent basis at x; deterministic in x.
    std::array<TangentVector, 2> tangent_frame(const SurfacePoint& x) const;
    // Move x by the ambient displacement u and project back to the surface.
    SurfacePoint retract(const SurfacePoint& x, const TangentVector& u) const;
    // Quarter turn in the tangent plane: sphere n x u with outward normal,
    // torus multiplication by i. Used to turn energy gradients into
    // velocities.
    TangentVector rotate90(const SurfacePoint& x, const TangentVector& u) const;

    // Distance below which Green's-function evaluations refuse to proceed
    // (and the integrator halts): two vortices this close are a collision.
    static constexpr double collision_tolerance = 1e-9;

private:
    explicit Surface(SurfaceKind kind, Complex tau = {0.0, 1.0});
    void check_point(const SurfacePoint& x) const;

    SurfaceKind kind_;
    Complex tau_{0.0, 1.0};
    // Lagrange-reduced basis of the period lattice, for nearest-translate
    // searches that stay correct for sheared moduli.
    Complex red_a_{1.0, 0.0}, red_b_{0.0, 1.0};
};

}  // namespace vortex
