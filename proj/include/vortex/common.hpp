#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace vortex {

inline constexpr double pi = 3.141592653589793238462643383279502884;

// Error taxonomy used across the library:
//   validation_error  rejected input (malformed point, bad partition, bad parameter)
//   singularity_error evaluation at or within tolerance of a vortex/source collision
//   capacity_error    request exceeds a documented problem-size limit
//   numeric_error     internal computation failed to converge or broke an invariant
struct validation_error : std::runtime_error { using std::runtime_error::runtime_error; };
struct singularity_error : std::runtime_error { using std::runtime_error::runtime_error; };
struct capacity_error : std::runtime_error { using std::runtime_error::runtime_error; };
struct numeric_error : std::runtime_error { using std::runtime_error::runtime_error; };

using Vec3 = std::array<double, 3>;
using Complex = std::complex<double>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }

inline Vec3 normalized(const Vec3& a) {
    const double n = norm(a);
    if (!(n > 1e-300)) throw validation_error("cannot normalize a (near-)zero vector");
    return (1.0 / n) * a;
}

// splitmix64: derives well-mixed independent streams from (seed, index) pairs,
// so multi-start searches are reproducible regardless of scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d649bb133111ebull;
    return x ^ (x >> 31);
}

// Shortest-round-trip-ish decimal form used by every CSV/JSON emitter so that
// identical runs produce byte-identical files.
inline std::string num_str(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace vortex
