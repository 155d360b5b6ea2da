#include "msgf/proptime.hpp"

#include <cmath>
#include <atomic>
#include <future>
#include <mutex>
#include <string>
#include <type_traits>

#include "msgf/quadrature.hpp"

namespace msgf {

namespace {

const cplx I(0.0, 1.0);

int sgn(double v) { return v < 0.0 ? -1 : 1; }

// Side-dependent mirror: the anticausal path is -conj of the causal one.
cplx mirror(Side side, cplx s) { return side == Side::Causal ? s : -std::conj(s); }

ContourPiece segment(cplx a, cplx b) {
    return {[a, b](double t) { return a + (b - a) * t; }, [a, b](double) { return b - a; }};
}

// s = a e^{i psi} u^2 removes the s^{-1/2} (and s^{-1}) endpoint behavior.
ContourPiece initial_leg(cplx end) {
    return {[end](double u) { return end * (u * u); }, [end](double u) { return 2.0 * end * u; }};
}

double tail_length(const FieldConfiguration& cfg, const ContourSpec& spec) {
    const double rate = cfg.M * cfg.M * std::sin(spec.theta);
    const double T = spec.T > 0.0 ? spec.T : 30.0 / rate;
    if (std::exp(-rate * T) > 1e-12) fail(ErrorKind::Tail, "contour truncation leaves a tail above 1e-12");
    return T;
}

// Splits [a, b] into pieces short enough for the local oscillation scale.
void add_split(std::vector<ContourPiece>& out, cplx a, cplx b, double scale) {
    const int n = std::clamp(static_cast<int>(std::ceil(std::abs(b - a) / scale)), 1, 2000);
    for (int k = 0; k < n; ++k) out.push_back(segment(a + (b - a) * (double(k) / n), a + (b - a) * (double(k + 1) / n)));
}

constexpr double kNegligibleExponent = -100.0;

template <class V>
V zero_value(const FieldConfiguration& cfg) {
    if constexpr (std::is_same_v<V, cplx>) {
        return cplx(0.0, 0.0);
    } else {
        return KernelMatrix::Zero(cfg.spinor_size(), cfg.spinor_size());
    }
}

template <class V, class F>
IntegrationResult<V> integrate_pieces(const F& f, Side side, const ReducedCoordinates& rc,
                                      const FieldConfiguration& cfg, const ContourSpec& spec) {
    validate(spec);
    const auto pieces = build_contour(side, rc, cfg, spec);
    IntegrationResult<V> out;
    double budget = 0.0;
    bool first = true;
    // Every term of the kernel is bounded by e^{-i w / 4s} for one of the two exponents;
    // where both bounds underflow the kernel is zero to working precision.
    const auto [w1, w2] = light_cone_exponents(rc);
    auto negligible = [&](cplx s) {
        return (-I * w1 / (4.0 * s)).real() < kNegligibleExponent && (-I * w2 / (4.0 * s)).real() < kNegligibleExponent;
    };
    const V zero = zero_value<V>(cfg);
    for (const auto& piece : pieces) {
        auto g = [&](double t) -> V {
            const ProperTime s{piece.s(t), side};
            if (negligible(s.s)) return zero;
            return V(f(s) * piece.ds(t));
        };
        auto r = quad::integrate(g, 0.0, 1.0, spec.abs_tol, spec.rel_tol, spec.max_panels);
        if (first) {
            out.value = r.value;
            first = false;
        } else {
            out.value += r.value;
        }
        out.error_estimate += r.error;
        out.evaluations += r.evaluations;
        budget += spec.abs_tol;
    }
    const double allowed = std::max(budget, spec.rel_tol * quad::magnitude(out.value));
    if (out.error_estimate > 10.0 * allowed)
        fail(ErrorKind::Convergence,
             "proper-time quadrature did not converge (error " + std::to_string(out.error_estimate) + ")");
    return out;
}

}  // namespace

void validate(const ContourSpec& c) {
    if (!(c.theta > 0.0 && c.theta < 0.5 * kPi)) fail(ErrorKind::Validation, "theta must lie in (0, pi/2)");
    if (!(c.delta > 0.0)) fail(ErrorKind::Validation, "delta must be positive");
    if (c.T < 0.0) fail(ErrorKind::Validation, "T must be nonnegative");
    if (!(c.rel_tol > 0.0) || !(c.abs_tol >= 0.0)) fail(ErrorKind::Validation, "tolerances must be positive");
    if (c.max_panels < 1) fail(ErrorKind::Validation, "max_panels must be positive");
}

std::pair<cplx, cplx> light_cone_exponents(const ReducedCoordinates& rc) {
    const double perp2 = rc.r * rc.r + rc.r_prime * rc.r_prime - 2.0 * rc.r * rc.r_prime * std::cos(rc.dphi);
    const double wide = (rc.r + rc.r_prime) * (rc.r + rc.r_prime);
    const cplx t2 = rc.dx0 * rc.dx0 - rc.dx3 * rc.dx3;
    return {t2 - perp2, t2 - wide};
}

double initial_direction(Side side, const ReducedCoordinates& rc) {
    const auto [w1, w2] = light_cone_exponents(rc);
    const double scale = 1.0 + std::norm(rc.dx0) + rc.dx3 * rc.dx3 + (rc.r + rc.r_prime) * (rc.r + rc.r_prime);
    // e^{-i w / 4s} decays along arg s = psi iff Re(-i w e^{-i psi}) < 0.
    auto damps = [&](cplx w, double psi) {
        if (std::abs(w) <= 1e-12 * scale) return true;
        return (-I * w * std::exp(-I * psi)).real() < -1e-9 * std::abs(w);
    };
    const double lo = side == Side::Causal ? -0.5 * kPi : -1.5 * kPi;
    constexpr int n = 3600;
    int best_start = -1, best_len = 0, run_start = -1;
    for (int k = 0; k <= n + 1; ++k) {
        const bool ok = k <= n && [&] {
            const double psi = lo + kPi * k / n;
            return damps(w1, psi) && damps(w2, psi);
        }();
        if (ok && run_start < 0) run_start = k;
        if (!ok && run_start >= 0) {
            if (k - run_start > best_len) {
                best_len = k - run_start;
                best_start = run_start;
            }
            run_start = -1;
        }
    }
    if (best_len == 0)
        fail(ErrorKind::Domain,
             "no proper-time direction damps both light-cone exponents; use complex-time damping between the cones");
    return lo + kPi * (best_start + 0.5 * (best_len - 1)) / n;
}

std::vector<ContourPiece> build_contour(Side side, const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                                        const ContourSpec& spec) {
    validate(spec);
    const double g = cfg.gamma();
    const double a = 0.25 * kPi / g;
    const double psi = initial_direction(side, rc);
    const double T = tail_length(cfg, spec);
    const double step = 0.5 * std::min(kPi / g, 2.0 * kPi / (cfg.M * cfg.M));
    const cplx dir = std::polar(1.0, -spec.theta);
    std::vector<ContourPiece> out;
    const cplx leg_end = std::polar(a, psi);
    out.push_back(initial_leg(leg_end));
    if (spec.kind == ContourKind::RotatedRay) {
        const cplx start = mirror(side, a * dir);
        if (std::abs(start - leg_end) > 1e-12 * a) out.push_back(segment(leg_end, start));
        add_split(out, start, mirror(side, std::max(T, 2.0 * a) * dir), step);
        return out;
    }
    const cplx start = mirror(side, cplx(a, -spec.delta));
    const cplx turn = mirror(side, cplx(3.5 * kPi / g, -spec.delta));
    out.push_back(segment(leg_end, start));
    add_split(out, start, turn, step);
    add_split(out, turn, turn + mirror(side, T * dir), step);
    return out;
}

IntegrationResult<KernelMatrix> integrate_kernel(const std::function<KernelMatrix(const ProperTime&)>& f, Side side,
                                                 const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                                                 const ContourSpec& spec) {
    return integrate_pieces<KernelMatrix>(f, side, rc, cfg, spec);
}

IntegrationResult<KernelMatrix> integrate_causal(const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                                                 Extension ext, const ContourSpec& spec) {
    return integrate_kernel([&](const ProperTime& s) { return f_total(s, rc, cfg, ext); }, Side::Causal, rc, cfg,
                            spec);
}

IntegrationResult<KernelMatrix> integrate_anticausal(const ReducedCoordinates& rc, const FieldConfiguration& cfg,
                                                     Extension ext, const ContourSpec& spec) {
    return integrate_kernel([&](const ProperTime& s) { return f_total(s, rc, cfg, ext); }, Side::Anticausal, rc,
                            cfg, spec);
}

IntegrationResult<cplx> integrate_scalar(Side side, const ReducedCoordinates& rc, const FieldConfiguration& cfg, int D,
                                         const ContourSpec& spec) {
    ReducedCoordinates r = rc;
    if (D == 2) r.dx3 = 0.0;
    return integrate_pieces<cplx>([&](const ProperTime& s) { return f_scalar(s, r, cfg, D); }, side, r, cfg, spec);
}

Stencil sample_stencil(const DeltaField& delta, const SpacetimePoint& x, double h, Dimension dim, int threads) {
    if (!(h > 0.0)) fail(ErrorKind::Validation, "stencil spacing must be positive");
    if (!(x.r > 10.0 * h)) fail(ErrorKind::Axis, "stencil reaches the solenoid axis");
    const int axes = dim == Dimension::D2plus1 ? 3 : 4;
    const double x1 = x.r * std::cos(x.phi), x2 = x.r * std::sin(x.phi);
    auto shifted = [&](int axis, double d) {
        double c[4] = {x.x0, x1, x2, x.x3};
        c[axis] += d;
        return SpacetimePoint{c[0], std::hypot(c[1], c[2]), std::atan2(c[2], c[1]), c[3]};
    };
    std::vector<SpacetimePoint> pts{x};
    static constexpr double kMult[4] = {-2.0, -1.0, 1.0, 2.0};
    for (int a = 0; a < axes; ++a)
        for (double m : kMult) pts.push_back(shifted(a, m * h));
    std::vector<KernelMatrix> vals(pts.size());
    if (threads <= 1) {
        for (size_t k = 0; k < pts.size(); ++k) vals[k] = delta(pts[k]);
    } else {
        std::vector<std::future<void>> jobs;
        const size_t nt = std::min<size_t>(threads, pts.size());
        for (size_t t = 0; t < nt; ++t)
            jobs.push_back(std::async(std::launch::async, [&, t] {
                for (size_t k = t; k < pts.size(); k += nt) vals[k] = delta(pts[k]);
            }));
        for (auto& j : jobs) j.get();
    }
    Stencil st;
    st.center = x;
    st.h = h;
    st.dim = dim;
    st.value = vals[0];
    for (int a = 0; a < axes; ++a) st.offsets.push_back({vals[1 + 4 * a], vals[2 + 4 * a], vals[3 + 4 * a], vals[4 + 4 * a]});
    return st;
}

KernelMatrix apply_dirac_operator(const Stencil& st, const FieldConfiguration& cfg, MassSign sign) {
    const int axes = st.dim == Dimension::D2plus1 ? 3 : 4;
    if (st.dim != cfg.dim) fail(ErrorKind::Validation, "stencil dimension differs from the configuration");
    if (static_cast<int>(st.offsets.size()) != axes || !(st.h > 0.0))
        fail(ErrorKind::Validation, "inconsistent stencil");
    if (!(st.center.r > 10.0 * st.h)) fail(ErrorKind::Axis, "stencil reaches the solenoid axis");
    const auto pot = potentials(cfg, st.center);
    const double m = sign == MassSign::PlusM ? cfg.M : -cfg.M;
    KernelMatrix out = m * st.value;
    for (int a = 0; a < axes; ++a) {
        const auto& o = st.offsets[a];
        const KernelMatrix d = (8.0 * (o[2] - o[1]) - (o[3] - o[0])) / (12.0 * st.h);
        out += gamma_algebra::gamma(a, cfg.dim) * KernelMatrix(I * d + pot.eA[a] * st.value);
    }
    return out;
}

KernelMatrix spin_down_propagator(const Stencil& st, const FieldConfiguration& cfg) {
    if (cfg.dim != Dimension::D2plus1) fail(ErrorKind::Domain, "spin-down propagator exists in 2+1 only");
    const KernelMatrix s1 = gamma_algebra::pauli(1);
    return -(s1 * apply_dirac_operator(st, cfg, MassSign::MinusM) * s1);
}

KernelMatrix assemble(PropagatorKind kind, const KernelMatrix& Sc, const KernelMatrix& Scbar, double dx0) {
    if (kind == PropagatorKind::Causal) return Sc;
    if (kind == PropagatorKind::Anticausal) return Scbar;
    if (dx0 == 0.0 || !std::isfinite(dx0)) fail(ErrorKind::Domain, "step functions are undefined at dx0 = 0");
    const KernelMatrix S = double(sgn(dx0)) * (Sc - Scbar);
    switch (kind) {
        case PropagatorKind::Commutation: return S;
        case PropagatorKind::Retarded: return dx0 > 0.0 ? S : KernelMatrix(KernelMatrix::Zero(S.rows(), S.cols()));
        case PropagatorKind::Advanced: return dx0 < 0.0 ? KernelMatrix(-S) : KernelMatrix(KernelMatrix::Zero(S.rows(), S.cols()));
        default: break;
    }
    return S;
}

PropagatorValue propagator(PropagatorKind kind, const SpacetimePoint& x, const SpacetimePoint& xp,
                           const FieldConfiguration& cfg, Extension ext, const PropagatorOptions& opt) {
    if (opt.spin_down && cfg.dim != Dimension::D2plus1)
        fail(ErrorKind::Domain, "spin-down propagator exists in 2+1 only");
    if (!(opt.damping >= 0.0)) fail(ErrorKind::Validation, "damping must be nonnegative");
    const double dx0 = x.x0 - xp.x0;
    const bool need_c = kind != PropagatorKind::Anticausal;
    const bool need_cbar = kind != PropagatorKind::Causal;
    if (need_c && need_cbar && dx0 == 0.0) fail(ErrorKind::Domain, "step functions are undefined at dx0 = 0");
    const int n = cfg.spinor_size();
    PropagatorValue out{KernelMatrix::Zero(n, n), 0.0, 0};
    auto side_value = [&](Side side) {
        std::atomic<int> evals{0};
        std::mutex mu;
        double err_sum = 0.0;
        DeltaField delta = [&](const SpacetimePoint& q) {
            ReducedCoordinates rc = reduce(q, xp, cfg);
            const double d = q.x0 - xp.x0;
            const double shift = (side == Side::Causal ? 1.0 : -1.0) * sgn(d) * opt.damping;
            rc.dx0 = cplx(d, -shift);
            auto r = side == Side::Causal ? integrate_causal(rc, cfg, ext, opt.contour)
                                          : integrate_anticausal(rc, cfg, ext, opt.contour);
            evals += r.evaluations;
            std::lock_guard<std::mutex> lock(mu);
            err_sum += r.error_estimate;
            return r.value;
        };
        const Stencil st = sample_stencil(delta, x, opt.h, cfg.dim, opt.threads);
        out.evaluations += evals;
        out.error_estimate += err_sum * 1.5 / opt.h;
        return opt.spin_down ? spin_down_propagator(st, cfg) : apply_dirac_operator(st, cfg, MassSign::PlusM);
    };
    const KernelMatrix Sc = need_c ? side_value(Side::Causal) : KernelMatrix::Zero(n, n);
    const KernelMatrix Scbar = need_cbar ? side_value(Side::Anticausal) : KernelMatrix::Zero(n, n);
    out.value = assemble(kind, Sc, Scbar, dx0);
    return out;
}

}  // namespace msgf
