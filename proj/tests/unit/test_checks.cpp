#include <doctest.h>

#include <set>

#include "msgf/checks.hpp"
#include "msgf/types.hpp"

using namespace msgf;

TEST_SUITE("checks") {

TEST_CASE("catalog covers every acceptance group") {
    std::set<std::string> ids;
    std::set<int> groups;
    for (const auto& c : checks::catalog()) {
        CHECK(ids.insert(c.id).second);
        groups.insert(c.criterion);
        CHECK(c.tolerance > 0.0);
    }
    for (int g = 1; g <= 9; ++g) CHECK(groups.count(g) == 1);
}

TEST_CASE("lookup and validation") {
    CHECK(checks::find("sum-identity").criterion == 1);
    CHECK_THROWS_AS(checks::find("no-such-check"), Error);
    checks::VerifyOptions o;
    o.tolerances["sum-identity"] = -1.0;
    CHECK_THROWS_AS(checks::validate(o), Error);
    o.tolerances["sum-identity"] = 1e-8;
    o.tolerances["bogus"] = 1e-8;
    CHECK_THROWS_AS(checks::validate(o), Error);
}

TEST_CASE("single check and tolerance override") {
    const auto rows = checks::run("gamma-values");
    CHECK(rows.size() == 6);
    for (const auto& r : rows) CHECK(r.pass);
    checks::VerifyOptions strict;
    strict.tolerances["gamma-values"] = 1e-300;
    bool any_fail = false;
    for (const auto& r : checks::run("gamma-values", strict)) any_fail = any_fail || !r.pass;
    CHECK(any_fail);
}

TEST_CASE("lower-bound rows") {
    const auto rows = checks::run("scalar-asymmetry");
    REQUIRE_FALSE(rows.empty());
    for (const auto& r : rows) {
        CHECK(r.lower_bound);
        CHECK(r.pass);
        CHECK(r.residual >= 0.1);
    }
}

TEST_CASE("suite keeps catalog order") {
    const auto rows = checks::run_suite({"gamma-values", "sum-identity"});
    REQUIRE(rows.size() == 33);
    CHECK(rows.front().check == "sum-identity");
    CHECK(rows.back().check == "gamma-values");
    const auto j = checks::to_json(rows.back());
    CHECK(j["check"] == "gamma-values");
    CHECK(j["pass"] == true);
}

}
