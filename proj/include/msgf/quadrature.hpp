#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <utility>
#include <vector>

#include "msgf/types.hpp"

namespace msgf::quad {

inline double magnitude(double v) { return std::fabs(v); }
inline double magnitude(const cplx& v) { return std::abs(v); }
template <class Derived>
double magnitude(const Eigen::MatrixBase<Derived>& v) {
    return v.norm();
}

template <class V>
struct Result {
    V value{};
    double error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
inline constexpr std::array<double, 8> kXk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <class V>
struct Panel {
    double a, b;
    V value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

template <class F>
auto gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    auto fc = f(c);
    using V = decltype(fc);
    V kron = fc * kWk[7];
    V gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXk[j];
        auto f1 = f(c - dx);
        auto f2 = f(c + dx);
        V pair = f1 + f2;
        kron += pair * kWk[j];
        if (j % 2 == 1) gauss += pair * kWg[j / 2];
    }
    V value = kron * h;
    const double err = magnitude(V((kron - gauss) * h));
    return std::pair<V, double>(value, err);
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (G7/K15) on [a, b], seeded with
/// `initial_panels` equal panels. Stops when err <= max(abs_tol, rel_tol * |I|)
/// or the panel budget is spent.
template <class F>
auto integrate(F&& f, double a, double b, double abs_tol, double rel_tol, int max_panels = 2000,
               int initial_panels = 1) {
    using V = decltype(f(a));
    using P = detail::Panel<V>;
    Result<V> out;
    const int n0 = std::max(initial_panels, 1);
    std::priority_queue<P> heap;
    V total{};
    double err = 0.0;
    for (int k = 0; k < n0; ++k) {
        const double lo = a + (b - a) * k / n0, hi = k + 1 == n0 ? b : a + (b - a) * (k + 1) / n0;
        auto [v, e] = detail::gk15(f, lo, hi);
        total = k == 0 ? v : V(total + v);
        err += e;
        heap.push(P{lo, hi, v, e});
    }
    out.evaluations = 15 * n0;
    int panels = n0;
    while (err > std::max(abs_tol, rel_tol * magnitude(total)) && panels < max_panels) {
        P worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto [vl, el] = detail::gk15(f, worst.a, mid);
        auto [vr, er] = detail::gk15(f, mid, worst.b);
        out.evaluations += 30;
        total += (vl + vr) - worst.value;
        err += (el + er) - worst.error;
        heap.push(P{worst.a, mid, vl, el});
        heap.push(P{mid, worst.b, vr, er});
        ++panels;
    }
    // Re-sum to shed the drift of incremental updates.
    V sum = heap.top().value;
    double esum = heap.top().error;
    heap.pop();
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().error;
        heap.pop();
    }
    out.value = sum;
    out.error = esum;
    out.converged = esum <= std::max(abs_tol, rel_tol * magnitude(sum));
    return out;
}

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> x, w;
    explicit GaussLegendre(int n) : x(n), w(n) {
        for (int i = 0; i < n; ++i) {
            double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                if (n == 1) p0 = 1.0, p1 = t;
                const double dp = n * (t * p1 - p0) / (t * t - 1.0);
                const double dt = p1 / dp;
                t -= dt;
                if (std::fabs(dt) < 1e-16) {
                    w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
                    break;
                }
                w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
            }
            x[i] = t;
        }
    }
};

}  // namespace msgf::quad
