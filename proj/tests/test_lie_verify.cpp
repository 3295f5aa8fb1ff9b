#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gtmm/errors.hpp"
#include "gtmm/lie_verify.hpp"

using namespace gtmm;

namespace {

VerificationReport run(const char* name, long long n, long long m, int restarts,
                       bool degenerate = false) {
    VerifyOptions o;
    o.restarts = restarts;
    o.seed = 42;
    o.degenerate_conjugators = degenerate;
    return verify_ktpp_numeric(catalog_entry(name), n, m, o);
}

void check_report_invariants(const VerificationReport& r) {
    CHECK(r.converged_count <= r.restarts);
    CHECK(r.best_residual >= 0.0);
    if (r.converged_count > 0) {
        CHECK(r.best_residual <= r.worst_residual);
        CHECK(r.max_distance_to_K >= 0.0);
    }
    for (const auto& v : r.violations) {
        CHECK(v.restart >= 0);
        CHECK(v.restart < r.restarts);
        CHECK(v.distance > 0.0);
        CHECK(!v.params.empty());
    }
    if (!r.violations.empty())
        CHECK(r.verdict == Verdict::violated);
    else if (r.converged_count > 0)
        CHECK(r.verdict == Verdict::consistent);
    else
        CHECK(r.verdict == Verdict::inconclusive);
}

}  // namespace

TEST_CASE("n=1 cases are trivially consistent") {
    for (const char* name : {"three_conjugates_real", "three_conjugates_complex",
                             "three_conjugates_quaternion"}) {
        CAPTURE(name);
        VerificationReport r = run(name, 1, 1, 10);
        CHECK(r.verdict == Verdict::consistent);
        CHECK(r.converged_count == 10);
        CHECK(r.violations.empty());
        check_report_invariants(r);
    }
}

TEST_CASE("real family is consistent at n=2 and n=3") {
    for (long long n : {2LL, 3LL}) {
        CAPTURE(n);
        VerificationReport r = run("three_conjugates_real", n, 1, 50);
        CHECK(r.verdict == Verdict::consistent);
        CHECK(r.converged_count >= 45);
        CHECK(r.max_distance_to_K < 1e-6);
        CHECK(r.worst_residual < 1e-10);
        check_report_invariants(r);
    }
}

TEST_CASE("complex family is consistent at n=2") {
    VerificationReport r = run("three_conjugates_complex", 2, 1, 30);
    CHECK(r.verdict == Verdict::consistent);
    CHECK(r.converged_count >= 27);
    CHECK(r.max_distance_to_K < 1e-6);
    check_report_invariants(r);
}

TEST_CASE("sln_power is consistent at (n,m) = (2,2)") {
    VerificationReport r = run("sln_power", 2, 2, 30);
    CHECK(r.verdict == Verdict::consistent);
    CHECK(r.converged_count >= 27);
    CHECK(r.max_distance_to_K < 1e-6);
    check_report_invariants(r);
}

TEST_CASE("degenerate conjugators are flagged as violations") {
    for (const char* name : {"three_conjugates_real", "three_conjugates_complex"}) {
        CAPTURE(name);
        VerificationReport r = run(name, 2, 1, 50, true);
        CHECK(r.verdict == Verdict::violated);
        CHECK(!r.violations.empty());
        // the collapsed system admits solutions a unit away from K
        CHECK(r.max_distance_to_K > 1.0);
        check_report_invariants(r);
    }
}

TEST_CASE("deterministic for a fixed seed") {
    VerificationReport a = run("three_conjugates_real", 2, 1, 20);
    VerificationReport b = run("three_conjugates_real", 2, 1, 20);
    CHECK(a.verdict == b.verdict);
    CHECK(a.converged_count == b.converged_count);
    CHECK(a.worst_residual == b.worst_residual);
    CHECK(a.max_distance_to_K == b.max_distance_to_K);
}

TEST_CASE("invalid arguments are rejected") {
    const LieConstruction& real = catalog_entry("three_conjugates_real");
    VerifyOptions o;
    CHECK_THROWS_AS(verify_ktpp_numeric(real, 0, 1, o), InvalidSpec);
    o.restarts = 0;
    CHECK_THROWS_AS(verify_ktpp_numeric(real, 2, 1, o), InvalidSpec);
    o.restarts = 10;
    CHECK_THROWS_AS(verify_ktpp_numeric(catalog_entry("sln_power"), 2, 1, o), InvalidSpec);
    CHECK_THROWS_AS(verify_ktpp_numeric(catalog_entry("sl_triangular_orthogonal"), 2, 1, o),
                    InvalidSpec);
}

TEST_CASE("report carries the run parameters") {
    VerificationReport r = run("sln_power", 2, 2, 5);
    CHECK(r.construction == "sln_power");
    CHECK(r.n == 2);
    CHECK(r.m == 2);
    CHECK(r.restarts == 5);
}
