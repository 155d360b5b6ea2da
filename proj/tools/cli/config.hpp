#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "msgf/checks.hpp"
#include "msgf/nonrel.hpp"
#include "msgf/proptime.hpp"

namespace msgf::cli {

enum class Format { Csv, Json };

struct PointPair {
    SpacetimePoint x;
    SpacetimePoint x_prime;
};

/// One swept parameter: `steps` equally spaced values from `from` to `to`.
struct SweepAxis {
    std::string parameter;  // eB, mu or M
    double from = 0.0;
    double to = 0.0;
    int steps = 1;
};

struct SpectrumOptions {
    int m_max = 3;
    int l_min = 0;
    int l_max = 3;
    std::vector<int> sigmas{-1, 1};
    std::vector<double> p3{0.0};  // 3+1 only
};

struct KernelOptions {
    std::vector<cplx> s;
    Side side = Side::Causal;
    int scalar_dim = 2;
};

struct PropagateOptions {
    std::vector<PropagatorKind> kinds{PropagatorKind::Causal};
    double h = 1e-2;
    double damping = 0.0;
    bool spin_down = false;
};

struct NonrelOptions {
    std::vector<NonrelKind> kinds{NonrelKind{}};
    std::vector<cplx> tau;        // empty: tau = dx0 / 2M per pair (retarded)
    std::optional<int> partial_wave;
};

struct RunConfig {
    FieldConfiguration cfg;
    Extension ext = Extension::MinusHalfPi;
    std::vector<PointPair> points;
    ContourSpec contour;
    std::vector<SweepAxis> sweep;
    std::optional<Format> format;
    std::string out_path;
    SpectrumOptions spectrum;
    KernelOptions kernel;
    PropagateOptions propagate;
    NonrelOptions nonrel;
    std::vector<std::string> only;
    checks::VerifyOptions verify;
};

/// Parses a configuration document; errors name the offending field.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

Extension parse_extension(const nlohmann::json& v, const std::string& where);

/// One field configuration per point of the sweep grid (the base one when empty).
std::vector<FieldConfiguration> expand_sweep(const RunConfig& run);

std::string kind_name(PropagatorKind k);
std::string kind_name(const NonrelKind& k);

}  // namespace msgf::cli
