#include "cli/commands.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <future>

namespace msgf::cli {

namespace {

using Row = std::vector<Cell>;

const std::vector<std::string> kCaseColumns{"case", "eB", "mu", "M", "pair"};

double theta_value(Extension ext) { return ext == Extension::MinusHalfPi ? -0.5 * kPi : 0.5 * kPi; }

Row case_prefix(size_t c, const FieldConfiguration& cfg, size_t pair) {
    return {std::int64_t(c), cfg.eB, cfg.mu, cfg.M, std::int64_t(pair)};
}

std::vector<std::string> with_case(std::initializer_list<const char*> rest) {
    std::vector<std::string> cols = kCaseColumns;
    cols.insert(cols.end(), rest.begin(), rest.end());
    return cols;
}

// Tasks run on a small pool; rows are concatenated in task order, and the first failing
// task (in that order) rethrows.
std::vector<Row> ordered_rows(size_t n, int threads, const std::function<std::vector<Row>(size_t)>& task) {
    std::vector<std::vector<Row>> parts(n);
    std::vector<std::exception_ptr> errors(n);
    auto work = [&](size_t k) {
        try {
            parts[k] = task(k);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    };
    if (threads <= 1 || n <= 1) {
        for (size_t k = 0; k < n; ++k) work(k);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::future<void>> pool;
        for (int t = 0; t < threads && size_t(t) < n; ++t)
            pool.push_back(std::async(std::launch::async, [&] {
                for (size_t k = next++; k < n; k = next++) work(k);
            }));
        for (auto& f : pool) f.get();
    }
    std::vector<Row> out;
    for (size_t k = 0; k < n; ++k) {
        if (errors[k]) std::rethrow_exception(errors[k]);
        for (auto& r : parts[k]) out.push_back(std::move(r));
    }
    return out;
}

void push_matrix(std::vector<Row>& rows, const Row& prefix, const KernelMatrix& m, const Row& suffix = {}) {
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            Row r = prefix;
            r.push_back(std::int64_t(i));
            r.push_back(std::int64_t(j));
            r.push_back(m(i, j).real());
            r.push_back(m(i, j).imag());
            r.insert(r.end(), suffix.begin(), suffix.end());
            rows.push_back(std::move(r));
        }
}

}  // namespace

int status_for(const Error& e) { return e.kind() == ErrorKind::Validation ? 1 : 2; }

Output cmd_spectrum(const RunConfig& run) {
    if (!run.sweep.empty()) fail(ErrorKind::Validation, "spectrum: sweeps are not supported; run one configuration per call");
    Output out;
    out.table.columns = {"m", "l", "sigma", "p3", "theta", "sgnB", "omega", "eps_plus", "eps_minus"};
    const auto& sp = run.spectrum;
    const auto& cfg = run.cfg;
    const bool d3 = cfg.dim == Dimension::D3plus1;
    std::vector<std::optional<double>> p3s;
    if (d3) {
        for (double p : sp.p3) p3s.emplace_back(p);
    } else {
        p3s.emplace_back(std::nullopt);
    }
    for (int m = 0; m <= sp.m_max; ++m)
        for (int l = sp.l_min; l <= sp.l_max; ++l)
            for (int sigma : sp.sigmas)
                for (const auto& p3 : p3s) {
                    const double w = omega_spectrum({m, l, sigma, p3}, cfg, run.ext);
                    Row r{std::int64_t(m), std::int64_t(l), std::int64_t(sigma)};
                    r.push_back(p3 ? Cell(*p3) : Cell{});
                    r.push_back(theta_value(run.ext));
                    r.push_back(std::int64_t(cfg.sgnB()));
                    r.push_back(w);
                    r.push_back(energy(w, p3, cfg.M, Branch::Plus));
                    r.push_back(energy(w, p3, cfg.M, Branch::Minus));
                    out.table.rows.push_back(std::move(r));
                }
    return out;
}

Output cmd_kernel(const RunConfig& run, KernelMode mode, int threads) {
    Output out;
    out.table.columns = with_case({"s_re", "s_im", "row", "col", "value_re", "value_im", "flag"});
    const auto cfgs = expand_sweep(run);
    const size_t np = run.points.size();
    out.table.rows = ordered_rows(cfgs.size() * np, threads, [&](size_t task) {
        const size_t c = task / np, p = task % np;
        const auto& cfg = cfgs[c];
        const auto rc = reduce(run.points[p].x, run.points[p].x_prime, cfg);
        std::vector<Row> rows;
        for (cplx sv : run.kernel.s) {
            Row prefix = case_prefix(c, cfg, p);
            prefix.push_back(sv.real());
            prefix.push_back(sv.imag());
            const ProperTime s{sv, run.kernel.side};
            try {
                KernelMatrix m;
                if (mode == KernelMode::Scalar) {
                    m = KernelMatrix::Constant(1, 1, f_scalar(s, rc, cfg, run.kernel.scalar_dim));
                } else if (mode == KernelMode::Uniform) {
                    m = f_uniform(s, rc, cfg);
                } else {
                    m = f_total(s, rc, cfg, run.ext);
                }
                push_matrix(rows, prefix, m, {Cell{}});
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::Pole) throw;
                Row r = prefix;
                const double nan = std::numeric_limits<double>::quiet_NaN();
                r.insert(r.end(), {Cell{}, Cell{}, nan, nan, std::string("pole")});
                rows.push_back(std::move(r));
            }
        }
        return rows;
    });
    return out;
}

Output cmd_propagate(const RunConfig& run, int threads) {
    Output out;
    out.table.columns =
        with_case({"kind", "row", "col", "value_re", "value_im", "error_estimate", "evaluations"});
    const auto cfgs = expand_sweep(run);
    const size_t np = run.points.size();
    const auto& po = run.propagate;
    bool need_c = false, need_cb = false;
    for (auto k : po.kinds) {
        if (k != PropagatorKind::Anticausal) need_c = true;
        if (k != PropagatorKind::Causal) need_cb = true;
    }
    out.table.rows = ordered_rows(cfgs.size() * np, threads, [&](size_t task) {
        const size_t c = task / np, p = task % np;
        const auto& cfg = cfgs[c];
        const auto& pair = run.points[p];
        PropagatorOptions opt;
        opt.contour = run.contour;
        opt.h = po.h;
        opt.damping = po.damping;
        opt.spin_down = po.spin_down;
        PropagatorValue sc, scb;
        if (need_c) sc = propagator(PropagatorKind::Causal, pair.x, pair.x_prime, cfg, run.ext, opt);
        if (need_cb) scb = propagator(PropagatorKind::Anticausal, pair.x, pair.x_prime, cfg, run.ext, opt);
        const double dx0 = pair.x.x0 - pair.x_prime.x0;
        std::vector<Row> rows;
        for (auto kind : po.kinds) {
            PropagatorValue v;
            if (kind == PropagatorKind::Causal) {
                v = sc;
            } else if (kind == PropagatorKind::Anticausal) {
                v = scb;
            } else {
                v.value = assemble(kind, sc.value, scb.value, dx0);
                const bool forward = dx0 > 0.0;
                const bool zero = (kind == PropagatorKind::Retarded && !forward) || (kind == PropagatorKind::Advanced && forward);
                v.error_estimate = zero ? 0.0 : sc.error_estimate + scb.error_estimate;
                v.evaluations = sc.evaluations + scb.evaluations;
            }
            Row prefix = case_prefix(c, cfg, p);
            prefix.push_back(kind_name(kind));
            push_matrix(rows, prefix, v.value, {v.error_estimate, std::int64_t(v.evaluations)});
        }
        return rows;
    });
    return out;
}

Output cmd_nonrel(const RunConfig& run, int threads) {
    Output out;
    out.table.columns = with_case({"kind", "l", "tau_re", "tau_im", "value_re", "value_im"});
    const auto cfgs = expand_sweep(run);
    const size_t np = run.points.size();
    const auto& no = run.nonrel;
    out.table.rows = ordered_rows(cfgs.size() * np, threads, [&](size_t task) {
        const size_t c = task / np, p = task % np;
        const auto& cfg = cfgs[c];
        const auto rc = reduce(run.points[p].x, run.points[p].x_prime, cfg);
        std::vector<cplx> taus = no.tau;
        const bool retarded = taus.empty();
        if (retarded) taus.push_back(nonrel_tau(rc.dx0.real(), cfg.M));
        std::vector<Row> rows;
        for (const auto& kind : no.kinds)
            for (cplx tau : taus) {
                cplx v;
                if (no.partial_wave) {
                    v = retarded && tau.real() <= 0.0 ? cplx(0.0) : nonrel_Sl(*no.partial_wave, kind, rc, cfg, tau, run.ext);
                } else if (retarded) {
                    v = tau.real() > 0.0 ? nonrel_retarded(kind, rc, cfg, tau.real(), run.ext) : cplx(0.0);
                } else {
                    v = nonrel_kernel(kind, rc, cfg, tau, run.ext);
                }
                Row r = case_prefix(c, cfg, p);
                r.push_back(kind_name(kind));
                r.push_back(no.partial_wave ? Cell(std::int64_t(*no.partial_wave)) : Cell{});
                r.insert(r.end(), {tau.real(), tau.imag(), v.real(), v.imag()});
                rows.push_back(std::move(r));
            }
        return rows;
    });
    return out;
}

Output cmd_verify(const RunConfig& run, int threads) {
    checks::VerifyOptions opt = run.verify;
    opt.threads = threads;
    const auto results = checks::run_suite(run.only, opt);
    Output out;
    out.table.columns = {"check", "parameters", "residual", "tolerance", "bound", "pass"};
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    int failed = 0;
    for (const auto& r : results) {
        if (!r.pass) ++failed;
        out.table.rows.push_back({r.check, r.parameters.dump(), r.residual, r.tolerance,
                                  std::string(r.lower_bound ? "min" : "max"), std::string(r.pass ? "true" : "false")});
        list.push_back(checks::to_json(r));
    }
    nlohmann::ordered_json doc;
    doc["pass"] = failed == 0;
    doc["total"] = results.size();
    doc["failed"] = failed;
    doc["results"] = std::move(list);
    out.document = std::move(doc);
    out.status = failed == 0 ? 0 : 3;
    return out;
}

}  // namespace msgf::cli
