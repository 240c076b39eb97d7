#pragma once

#include <array>
#include <cmath>

namespace gstlink {

struct Vec2 {
    double x = 0, y = 0;
};

struct Vec3 {
    double x = 0, y = 0, z = 0;
};

inline Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
inline double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

using Vec4 = std::array<double, 4>;

// Milnor fiber of z^p + w^q = 1 on the unit sphere, in annulus coordinates:
// u is the fine angular coordinate (subdivision vertex g sits at u = 2g,
// edge corners at u = 2kd - 1), rho in [0,1] runs from the spine (0) to the
// boundary torus knot (1).
class FiberModel {
public:
    FiberModel(int p, int q, int d) : p_(p), q_(q), d_(d) {}
    double theta(double u) const;
    Vec4 point(double u, double rho) const;
    // (a,b) sheet indices at a spine point
    std::array<int, 2> sheet(double u) const;

private:
    int p_, q_, d_;
};

struct LayoutConstants {
    double u_mark = -1.0;   // marked point (puncture side) in fine units
    double a0 = 0.1, a1 = 0.9;  // band window relative to u_mark
    double delta = 0.3;     // pole offset into the fiber
    double gap = 0.5;       // half distance between the two halves
    double h = 0.25;        // routing sample step
    double seglen = 0.02;   // max 3D segment length
    double lo = 0.15, hi = 0.85;  // routing band in rho
    Vec3 view{0.0123, 0.0371, 1.0};
};

// F+ is the stereographic image of the fiber; F- its mirror in x = mirror_x.
class Embedding {
public:
    Embedding(int p, int q, int d, const LayoutConstants& k = {});
    Vec3 plus(double u, double rho) const;
    Vec3 minus(double u, double rho) const;
    Vec3 stereo(const Vec4& X) const;
    double peak_x() const { return peak_x_; }
    double mirror_x() const { return mirror_x_; }
    const FiberModel& fiber() const { return fiber_; }

private:
    FiberModel fiber_;
    Vec4 pole_{}, e1_{}, e2_{}, e3_{};
    double peak_x_ = 0, mirror_x_ = 0;
};

}  // namespace gstlink
