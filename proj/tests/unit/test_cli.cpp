#include <doctest.h>

#include <sstream>

#include "cli/commands.hpp"

using namespace msgf;
using namespace msgf::cli;
using json = nlohmann::json;

namespace {

RunConfig config(const char* text) { return parse_config(json::parse(text)); }

std::string message_of(const char* text) {
    try {
        config(text);
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

double number_at(const Table& t, size_t row, const std::string& col) {
    for (size_t k = 0; k < t.columns.size(); ++k)
        if (t.columns[k] == col) return std::get<double>(t.rows[row][k]);
    FAIL("no column " << col);
    return 0.0;
}

}  // namespace

TEST_CASE("number formatting round-trips") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(-2.5e-300) == "-2.5e-300");
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("csv quoting") {
    Table t{{"a", "b"}, {{std::string("x,y"), std::int64_t(3)}, {Cell{}, 0.25}}};
    std::ostringstream os;
    write_csv(os, t);
    CHECK(os.str() == "a,b\n\"x,y\",3\n,0.25\n");
}

TEST_CASE("config diagnostics name the field") {
    CHECK(message_of(R"({"field": {"mu": 1.5}})").find("field") != std::string::npos);
    CHECK(message_of(R"({"extension": 0.3})").find("extension") != std::string::npos);
    CHECK(message_of(R"({"points": [{"x": [0, 1]}]})").find("points[0]") != std::string::npos);
    CHECK(message_of(R"({"sweep": [{"parameter": "l0", "from": 0, "to": 1, "steps": 2}]})").find("sweep[0].parameter") !=
          std::string::npos);
    CHECK(message_of(R"({"verify": {"tolerances": {"sum-identity": 0}}})").find("verify") != std::string::npos);
    CHECK(message_of(R"({"colour": 1})").find("colour") != std::string::npos);
}

TEST_CASE("sweep expansion") {
    const auto run = config(R"({"sweep": [{"parameter": "mu", "from": 0.1, "to": 0.5, "steps": 3},
                                          {"parameter": "eB", "from": 1, "to": -1, "steps": 2}]})");
    const auto cfgs = expand_sweep(run);
    REQUIRE(cfgs.size() == 6);
    CHECK(cfgs[1].eB == -1.0);
    CHECK(cfgs[2].mu == doctest::Approx(0.3));
    CHECK_THROWS_AS(expand_sweep(config(R"({"sweep": [{"parameter": "mu", "from": 0, "to": 1, "steps": 2}]})")), Error);
}

TEST_CASE("spectrum table") {
    const auto out = cmd_spectrum(config(R"({"field": {"eB": 1, "mu": 0.3}, "extension": "-pi/2"})"));
    CHECK(out.table.columns ==
          std::vector<std::string>{"m", "l", "sigma", "p3", "theta", "sgnB", "omega", "eps_plus", "eps_minus"});
    int zeros = 0;
    for (size_t r = 0; r < out.table.rows.size(); ++r)
        if (number_at(out.table, r, "omega") == 0.0) {
            ++zeros;
            CHECK(std::get<std::int64_t>(out.table.rows[r][0]) == 0);
            CHECK(std::get<std::int64_t>(out.table.rows[r][1]) == 0);
            CHECK(std::get<std::int64_t>(out.table.rows[r][2]) == -1);
        }
    CHECK(zeros == 1);
    const auto empty = cmd_spectrum(config(R"({"spectrum": {"m_max": -1}})"));
    CHECK(empty.table.rows.empty());
    CHECK(empty.status == 0);
}

TEST_CASE("kernel modes") {
    const char* text = R"({"field": {"eB": 1, "mu": 0}, "points": [{"x": [0.2, 1.1, 0.7], "x_prime": [0, 0.8, -0.4]}],
                          "kernel": {"s": [[0.4, -0.05], [1.3, -0.2]]}})";
    const auto run = config(text);
    const auto full = cmd_kernel(run, KernelMode::Full, 1);
    const auto uni = cmd_kernel(run, KernelMode::Uniform, 1);
    REQUIRE(full.table.rows.size() == uni.table.rows.size());
    for (size_t r = 0; r < full.table.rows.size(); ++r) {
        CHECK(std::abs(number_at(full.table, r, "value_re") - number_at(uni.table, r, "value_re")) < 1e-6);
        CHECK(std::abs(number_at(full.table, r, "value_im") - number_at(uni.table, r, "value_im")) < 1e-6);
    }
    const auto sc = cmd_kernel(run, KernelMode::Scalar, 1);
    CHECK(sc.table.rows.size() == 2);
}

TEST_CASE("kernel flags poles") {
    const auto run = config(R"({"points": [{"x": [0.2, 1.1, 0.7], "x_prime": [0, 0.8, -0.4]}],
                               "kernel": {"s": [3.141592653589793]}})");
    const auto out = cmd_kernel(run, KernelMode::Full, 1);
    REQUIRE(out.table.rows.size() == 1);
    CHECK(std::get<std::string>(out.table.rows[0].back()) == "pole");
}

TEST_CASE("nonrel radial scan") {
    auto scan = [](const char* ext) {
        const std::string text = std::string(R"({"extension": ")") + ext +
                                 R"(", "field": {"mu": 0.3}, "points": [{"x": [1.4, 0.01, 0.4], "x_prime": [0, 1, 0]},
                                   {"x": [1.4, 0.02, 0.4], "x_prime": [0, 1, 0]}],
                                   "nonrel": {"kinds": ["antiparticle/up"], "partial_wave": 0}})";
        const auto out = cmd_nonrel(parse_config(json::parse(text)), 1);
        auto mag = [&](size_t r) { return std::hypot(number_at(out.table, r, "value_re"), number_at(out.table, r, "value_im")); };
        return std::pair{mag(0), mag(1)};
    };
    const auto [a0, a1] = scan("-pi/2");
    CHECK(a0 > a1);
    const auto [b0, b1] = scan("+pi/2");
    CHECK(b0 < b1);
}

TEST_CASE("verify subset") {
    auto run = config(R"({"verify": {"only": ["gamma-values"]}})");
    const auto out = cmd_verify(run, 1);
    CHECK(out.status == 0);
    CHECK(out.table.rows.size() == 6);
    run.verify.tolerances["gamma-values"] = 1e-300;
    CHECK(cmd_verify(run, 1).status == 3);
}

TEST_CASE("advanced rows vanish for a later x0") {
    const auto run = config(R"({"field": {"mu": 0.3}, "points": [{"x": [2.5, 1.1, 0.7], "x_prime": [0, 0.8, -0.4]}],
                               "propagate": {"kinds": ["retarded", "advanced"]}})");
    const auto out = cmd_propagate(run, 1);
    REQUIRE(out.table.rows.size() == 8);
    double ret = 0.0;
    for (size_t r = 0; r < 8; ++r) {
        const bool adv = std::get<std::string>(out.table.rows[r][5]) == "advanced";
        const double mag = std::hypot(number_at(out.table, r, "value_re"), number_at(out.table, r, "value_im"));
        if (adv) CHECK(mag == 0.0);
        else ret += mag;
    }
    CHECK(ret > 0.0);
}
