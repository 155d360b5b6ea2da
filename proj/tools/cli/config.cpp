#include "cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

namespace msgf::cli {

namespace {

using json = nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    fail(ErrorKind::Validation, "config: " + where + ": " + what);
}

void allow_only(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) bad(where, "expected an object");
    const std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : obj.items())
        if (!ok.count(k)) bad(where, "unknown field '" + k + "'");
}

double number(const json& v, const std::string& where) {
    if (!v.is_number()) bad(where, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) bad(where, "expected a finite number");
    return d;
}

int integer(const json& v, const std::string& where) {
    if (!v.is_number_integer()) bad(where, "expected an integer");
    return v.get<int>();
}

bool boolean(const json& v, const std::string& where) {
    if (!v.is_boolean()) bad(where, "expected true or false");
    return v.get<bool>();
}

std::string text(const json& v, const std::string& where) {
    if (!v.is_string()) bad(where, "expected a string");
    return v.get<std::string>();
}

// Complex numbers are written as a number or a [re, im] pair.
cplx complex_value(const json& v, const std::string& where) {
    if (v.is_number()) return {number(v, where), 0.0};
    if (v.is_array() && v.size() == 2) return {number(v[0], where + "[0]"), number(v[1], where + "[1]")};
    bad(where, "expected a number or a [re, im] pair");
}

std::vector<cplx> complex_list(const json& v, const std::string& where) {
    if (!v.is_array()) bad(where, "expected an array");
    std::vector<cplx> out;
    for (size_t k = 0; k < v.size(); ++k) out.push_back(complex_value(v[k], where + "[" + std::to_string(k) + "]"));
    return out;
}

// Linear grid {"from": z0, "to": z1, "steps": n}.
std::vector<cplx> complex_grid(const json& v, const std::string& where) {
    allow_only(v, where, {"from", "to", "steps"});
    if (!v.contains("from") || !v.contains("to") || !v.contains("steps")) bad(where, "needs from, to and steps");
    const cplx a = complex_value(v["from"], where + ".from"), b = complex_value(v["to"], where + ".to");
    const int n = integer(v["steps"], where + ".steps");
    if (n < 1) bad(where + ".steps", "must be at least 1");
    std::vector<cplx> out;
    for (int k = 0; k < n; ++k) out.push_back(n == 1 ? a : a + (b - a) * (double(k) / (n - 1)));
    return out;
}

SpacetimePoint point(const json& v, const std::string& where) {
    if (!v.is_array() || (v.size() != 3 && v.size() != 4)) bad(where, "expected [x0, r, phi] or [x0, r, phi, x3]");
    SpacetimePoint p{number(v[0], where + "[0]"), number(v[1], where + "[1]"), number(v[2], where + "[2]"), 0.0};
    if (v.size() == 4) p.x3 = number(v[3], where + "[3]");
    if (p.r < 0.0) bad(where + "[1]", "radius must be nonnegative");
    return p;
}

PropagatorKind propagator_kind(const std::string& s, const std::string& where) {
    if (s == "causal") return PropagatorKind::Causal;
    if (s == "anticausal") return PropagatorKind::Anticausal;
    if (s == "commutation") return PropagatorKind::Commutation;
    if (s == "retarded") return PropagatorKind::Retarded;
    if (s == "advanced") return PropagatorKind::Advanced;
    bad(where, "unknown propagator kind '" + s + "'");
}

NonrelKind nonrel_kind(const std::string& s, const std::string& where) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) bad(where, "expected species/spin, e.g. particle/up");
    const std::string sp = s.substr(0, slash), sn = s.substr(slash + 1);
    NonrelKind k;
    if (sp == "particle") k.species = Species::Particle;
    else if (sp == "antiparticle") k.species = Species::Antiparticle;
    else bad(where, "unknown species '" + sp + "'");
    if (sn == "up") k.spin = Spin::Up;
    else if (sn == "down") k.spin = Spin::Down;
    else bad(where, "unknown spin '" + sn + "'");
    return k;
}

void parse_field(const json& f, RunConfig& run) {
    allow_only(f, "field", {"eB", "l0", "mu", "M", "dim"});
    double eB = 1.0, mu = 0.0, M = 1.0;
    int l0 = 0;
    Dimension dim = Dimension::D2plus1;
    if (f.contains("eB")) eB = number(f["eB"], "field.eB");
    if (f.contains("l0")) l0 = integer(f["l0"], "field.l0");
    if (f.contains("mu")) mu = number(f["mu"], "field.mu");
    if (f.contains("M")) M = number(f["M"], "field.M");
    if (f.contains("dim")) {
        const std::string d = text(f["dim"], "field.dim");
        if (d == "2+1") dim = Dimension::D2plus1;
        else if (d == "3+1") dim = Dimension::D3plus1;
        else bad("field.dim", "expected \"2+1\" or \"3+1\"");
    }
    try {
        run.cfg = FieldConfiguration::make(eB, l0, mu, M, dim);
    } catch (const Error& e) {
        bad("field", e.what());
    }
}

void parse_contour(const json& c, ContourSpec& spec) {
    allow_only(c, "contour", {"kind", "theta", "delta", "T", "rel_tol", "abs_tol", "max_panels"});
    if (c.contains("kind")) {
        const std::string k = text(c["kind"], "contour.kind");
        if (k == "ray") spec.kind = ContourKind::RotatedRay;
        else if (k == "line") spec.kind = ContourKind::ShiftedLine;
        else bad("contour.kind", "expected \"ray\" or \"line\"");
    }
    if (c.contains("theta")) spec.theta = number(c["theta"], "contour.theta");
    if (c.contains("delta")) spec.delta = number(c["delta"], "contour.delta");
    if (c.contains("T")) spec.T = number(c["T"], "contour.T");
    if (c.contains("rel_tol")) spec.rel_tol = number(c["rel_tol"], "contour.rel_tol");
    if (c.contains("abs_tol")) spec.abs_tol = number(c["abs_tol"], "contour.abs_tol");
    if (c.contains("max_panels")) spec.max_panels = integer(c["max_panels"], "contour.max_panels");
    try {
        validate(spec);
    } catch (const Error& e) {
        bad("contour", e.what());
    }
}

void parse_sweep(const json& s, RunConfig& run) {
    if (!s.is_array()) bad("sweep", "expected an array of axes");
    for (size_t k = 0; k < s.size(); ++k) {
        const std::string where = "sweep[" + std::to_string(k) + "]";
        allow_only(s[k], where, {"parameter", "from", "to", "steps"});
        SweepAxis a;
        if (!s[k].contains("parameter")) bad(where, "missing parameter");
        a.parameter = text(s[k]["parameter"], where + ".parameter");
        if (a.parameter != "eB" && a.parameter != "mu" && a.parameter != "M")
            bad(where + ".parameter", "unknown parameter '" + a.parameter + "' (eB, mu or M)");
        if (!s[k].contains("from") || !s[k].contains("to") || !s[k].contains("steps")) bad(where, "needs from, to and steps");
        a.from = number(s[k]["from"], where + ".from");
        a.to = number(s[k]["to"], where + ".to");
        a.steps = integer(s[k]["steps"], where + ".steps");
        if (a.steps < 1) bad(where + ".steps", "must be at least 1");
        run.sweep.push_back(a);
    }
}

void parse_sections(const json& doc, RunConfig& run) {
    if (doc.contains("spectrum")) {
        const json& s = doc["spectrum"];
        allow_only(s, "spectrum", {"m_max", "l_min", "l_max", "sigma", "p3"});
        if (s.contains("m_max")) run.spectrum.m_max = integer(s["m_max"], "spectrum.m_max");
        if (s.contains("l_min")) run.spectrum.l_min = integer(s["l_min"], "spectrum.l_min");
        if (s.contains("l_max")) run.spectrum.l_max = integer(s["l_max"], "spectrum.l_max");
        if (s.contains("sigma")) {
            if (!s["sigma"].is_array()) bad("spectrum.sigma", "expected an array");
            run.spectrum.sigmas.clear();
            for (const auto& v : s["sigma"]) {
                const int sg = integer(v, "spectrum.sigma");
                if (sg != 1 && sg != -1) bad("spectrum.sigma", "entries must be +1 or -1");
                run.spectrum.sigmas.push_back(sg);
            }
        }
        if (s.contains("p3")) {
            if (!s["p3"].is_array()) bad("spectrum.p3", "expected an array");
            run.spectrum.p3.clear();
            for (const auto& v : s["p3"]) run.spectrum.p3.push_back(number(v, "spectrum.p3"));
        }
    }
    if (doc.contains("kernel")) {
        const json& k = doc["kernel"];
        allow_only(k, "kernel", {"s", "s_grid", "side", "scalar_dim"});
        if (k.contains("s")) run.kernel.s = complex_list(k["s"], "kernel.s");
        if (k.contains("s_grid")) {
            const auto g = complex_grid(k["s_grid"], "kernel.s_grid");
            run.kernel.s.insert(run.kernel.s.end(), g.begin(), g.end());
        }
        if (k.contains("side")) {
            const std::string s = text(k["side"], "kernel.side");
            if (s == "causal") run.kernel.side = Side::Causal;
            else if (s == "anticausal") run.kernel.side = Side::Anticausal;
            else bad("kernel.side", "expected \"causal\" or \"anticausal\"");
        }
        if (k.contains("scalar_dim")) {
            run.kernel.scalar_dim = integer(k["scalar_dim"], "kernel.scalar_dim");
            if (run.kernel.scalar_dim < 2) bad("kernel.scalar_dim", "must be at least 2");
        }
    }
    if (doc.contains("propagate")) {
        const json& p = doc["propagate"];
        allow_only(p, "propagate", {"kinds", "h", "damping", "spin_down"});
        if (p.contains("kinds")) {
            if (!p["kinds"].is_array() || p["kinds"].empty()) bad("propagate.kinds", "expected a nonempty array");
            run.propagate.kinds.clear();
            for (const auto& v : p["kinds"]) run.propagate.kinds.push_back(propagator_kind(text(v, "propagate.kinds"), "propagate.kinds"));
        }
        if (p.contains("h")) {
            run.propagate.h = number(p["h"], "propagate.h");
            if (!(run.propagate.h > 0.0)) bad("propagate.h", "must be positive");
        }
        if (p.contains("damping")) {
            run.propagate.damping = number(p["damping"], "propagate.damping");
            if (run.propagate.damping < 0.0) bad("propagate.damping", "must be nonnegative");
        }
        if (p.contains("spin_down")) run.propagate.spin_down = boolean(p["spin_down"], "propagate.spin_down");
    }
    if (doc.contains("nonrel")) {
        const json& n = doc["nonrel"];
        allow_only(n, "nonrel", {"kinds", "tau", "partial_wave"});
        if (n.contains("kinds")) {
            if (!n["kinds"].is_array() || n["kinds"].empty()) bad("nonrel.kinds", "expected a nonempty array");
            run.nonrel.kinds.clear();
            for (const auto& v : n["kinds"]) run.nonrel.kinds.push_back(nonrel_kind(text(v, "nonrel.kinds"), "nonrel.kinds"));
        }
        if (n.contains("tau")) {
            run.nonrel.tau = complex_list(n["tau"], "nonrel.tau");
            for (cplx t : run.nonrel.tau)
                if (t.imag() > 0.0) bad("nonrel.tau", "imaginary parts must be nonpositive");
        }
        if (n.contains("partial_wave")) run.nonrel.partial_wave = integer(n["partial_wave"], "nonrel.partial_wave");
    }
    if (doc.contains("verify")) {
        const json& v = doc["verify"];
        allow_only(v, "verify", {"only", "tolerances"});
        if (v.contains("only")) {
            if (!v["only"].is_array()) bad("verify.only", "expected an array of check ids");
            for (const auto& id : v["only"]) run.only.push_back(text(id, "verify.only"));
        }
        if (v.contains("tolerances")) {
            if (!v["tolerances"].is_object()) bad("verify.tolerances", "expected an object keyed by check id");
            for (const auto& [id, tol] : v["tolerances"].items())
                run.verify.tolerances[id] = number(tol, "verify.tolerances." + id);
        }
        try {
            checks::validate(run.verify);
            for (const auto& id : run.only) checks::find(id);
        } catch (const Error& e) {
            bad("verify", e.what());
        }
    }
}

}  // namespace

Extension parse_extension(const json& v, const std::string& where) {
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "-pi/2") return Extension::MinusHalfPi;
        if (s == "+pi/2" || s == "pi/2") return Extension::PlusHalfPi;
    } else if (v.is_number()) {
        const double t = v.get<double>();
        if (std::fabs(t + 0.5 * kPi) < 1e-12) return Extension::MinusHalfPi;
        if (std::fabs(t - 0.5 * kPi) < 1e-12) return Extension::PlusHalfPi;
    }
    bad(where, "extension angle must be -pi/2 or +pi/2");
}

RunConfig parse_config(const json& doc) {
    allow_only(doc, "(root)",
               {"field", "extension", "points", "contour", "sweep", "output", "spectrum", "kernel", "propagate", "nonrel",
                "verify"});
    RunConfig run;
    run.cfg = FieldConfiguration::make(1.0, 0, 0.0, 1.0);
    if (doc.contains("field")) parse_field(doc["field"], run);
    if (doc.contains("extension")) run.ext = parse_extension(doc["extension"], "extension");
    if (doc.contains("points")) {
        const json& p = doc["points"];
        if (!p.is_array()) bad("points", "expected an array of point pairs");
        for (size_t k = 0; k < p.size(); ++k) {
            const std::string where = "points[" + std::to_string(k) + "]";
            allow_only(p[k], where, {"x", "x_prime"});
            if (!p[k].contains("x") || !p[k].contains("x_prime")) bad(where, "needs x and x_prime");
            run.points.push_back({point(p[k]["x"], where + ".x"), point(p[k]["x_prime"], where + ".x_prime")});
        }
    }
    if (doc.contains("contour")) parse_contour(doc["contour"], run.contour);
    if (doc.contains("sweep")) parse_sweep(doc["sweep"], run);
    if (doc.contains("output")) {
        const json& o = doc["output"];
        allow_only(o, "output", {"format", "path"});
        if (o.contains("format")) {
            const std::string f = text(o["format"], "output.format");
            if (f == "csv") run.format = Format::Csv;
            else if (f == "json") run.format = Format::Json;
            else bad("output.format", "expected \"csv\" or \"json\"");
        }
        if (o.contains("path")) run.out_path = text(o["path"], "output.path");
    }
    parse_sections(doc, run);
    return run;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Validation, "config: cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::Validation, "config: " + path + ": " + e.what());
    }
    return parse_config(doc);
}

std::vector<FieldConfiguration> expand_sweep(const RunConfig& run) {
    std::vector<FieldConfiguration> out{run.cfg};
    for (size_t a = 0; a < run.sweep.size(); ++a) {
        const SweepAxis& ax = run.sweep[a];
        std::vector<FieldConfiguration> next;
        for (const auto& base : out) {
            for (int k = 0; k < ax.steps; ++k) {
                const double v = ax.steps == 1 ? ax.from : ax.from + (ax.to - ax.from) * k / (ax.steps - 1);
                FieldConfiguration c = base;
                if (ax.parameter == "eB") c.eB = v;
                else if (ax.parameter == "mu") c.mu = v;
                else c.M = v;
                try {
                    validate(c);
                } catch (const Error& e) {
                    bad("sweep[" + std::to_string(a) + "]", e.what());
                }
                next.push_back(c);
            }
        }
        out = std::move(next);
    }
    return out;
}

std::string kind_name(PropagatorKind k) {
    switch (k) {
        case PropagatorKind::Causal: return "causal";
        case PropagatorKind::Anticausal: return "anticausal";
        case PropagatorKind::Commutation: return "commutation";
        case PropagatorKind::Retarded: return "retarded";
        case PropagatorKind::Advanced: return "advanced";
    }
    return "?";
}

std::string kind_name(const NonrelKind& k) {
    return std::string(k.species == Species::Particle ? "particle" : "antiparticle") +
           (k.spin == Spin::Up ? "/up" : "/down");
}

}  // namespace msgf::cli
