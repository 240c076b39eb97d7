#include "gstlink/geometry.hpp"

#include <complex>
#include <vector>

namespace gstlink {

namespace {

const double kPi = std::acos(-1.0);

double dot4(const Vec4& a, const Vec4& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]; }

Vec4 sub4(Vec4 a, const Vec4& b, double s = 1.0)
{
    for (int i = 0; i < 4; ++i) a[i] -= s * b[i];
    return a;
}

Vec4 unit4(Vec4 a)
{
    double n = std::sqrt(dot4(a, a));
    for (auto& x : a) x /= n;
    return a;
}

Vec4 orth(Vec4 v, const std::vector<Vec4>& basis)
{
    for (const auto& b : basis) v = sub4(v, b, dot4(v, b));
    return unit4(v);
}

}  // namespace

double FiberModel::theta(double u) const { return kPi + kPi * (u + 1) / (2.0 * d_); }

Vec4 FiberModel::point(double u, double rho) const
{
    using C = std::complex<double>;
    const double th = theta(u);
    C Z, W;
    if (rho >= 1.0) {
        Z = std::pow(2.0, -1.0 / (2 * p_)) * std::polar(1.0, (th - 2 * kPi) / p_);
        W = std::pow(2.0, -1.0 / (2 * q_)) * std::polar(1.0, (kPi + th - 2 * kPi) / q_);
    } else {
        const double r = 1.0 / (1.0 - rho);
        const C zeta = std::polar(r, th);
        const C s = 0.5 + (zeta + 1.0 / zeta) / 4.0;
        const double argS = th + 2 * std::arg(1.0 + 1.0 / zeta);
        const double arg1 = kPi + th + 2 * std::arg(1.0 - 1.0 / zeta);
        const C z = std::pow(std::abs(s), 1.0 / p_) * std::polar(1.0, (argS - 2 * kPi) / p_);
        const C w = std::pow(std::abs(1.0 - s), 1.0 / q_) * std::polar(1.0, (arg1 - 2 * kPi) / q_);
        const double lam = std::pow(std::norm(s) + std::norm(1.0 - s), -1.0 / (2.0 * p_ * q_));
        Z = std::pow(lam, q_) * z;
        W = std::pow(lam, p_) * w;
    }
    return unit4({Z.real(), Z.imag(), W.real(), W.imag()});
}

std::array<int, 2> FiberModel::sheet(double u) const
{
    using C = std::complex<double>;
    const double th = theta(u);
    const C zeta = std::polar(1.0, th);
    const double argS = th + 2 * std::arg(1.0 + 1.0 / zeta);
    const double arg1 = kPi + th + 2 * std::arg(1.0 - 1.0 / zeta);
    long a = std::lround((argS - 2 * kPi) / (2 * kPi));
    long b = std::lround((arg1 - 2 * kPi) / (2 * kPi));
    return {(int)(((a % p_) + p_) % p_) + 1, (int)(((b % q_) + q_) % q_) + 1};
}

Embedding::Embedding(int p, int q, int d, const LayoutConstants& k) : fiber_(p, q, d)
{
    const double ua = k.u_mark + (k.a0 + k.a1) / 2;
    const Vec4 k0 = fiber_.point(ua, 1.0);
    const Vec4 nf = sub4(fiber_.point(ua, 1.0 - 1e-4), k0);
    const Vec4 tg = sub4(fiber_.point(ua + 1e-4, 1.0), fiber_.point(ua - 1e-4, 1.0));
    const Vec4 tgn = orth(tg, {k0});
    const Vec4 nfn = orth(nf, {k0, tgn});
    pole_ = unit4(sub4(k0, nfn, k.delta));
    e1_ = orth(k0, {pole_});
    e2_ = orth(tgn, {pole_, e1_});
    double best = -1;
    for (int i = 0; i < 4; ++i) {
        Vec4 s{0, 0, 0, 0};
        s[i] = 1;
        for (const auto& b : {pole_, e1_, e2_}) s = sub4(s, b, dot4(s, b));
        double n = std::sqrt(dot4(s, s));
        if (n > best + 1e-12) {
            best = n;
            e3_ = unit4(s);
        }
    }
    peak_x_ = stereo(k0).x;
    mirror_x_ = peak_x_ + k.gap;
}

Vec3 Embedding::stereo(const Vec4& X) const
{
    const double t = dot4(X, pole_);
    Vec4 Y = sub4(X, pole_, t);
    for (auto& y : Y) y /= (1.0 - t);
    return {dot4(Y, e1_), dot4(Y, e2_), dot4(Y, e3_)};
}

Vec3 Embedding::plus(double u, double rho) const { return stereo(fiber_.point(u, rho)); }

Vec3 Embedding::minus(double u, double rho) const
{
    Vec3 y = plus(u, rho);
    return {2 * mirror_x_ - y.x, y.y, y.z};
}

}  // namespace gstlink
