#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gtmm/errors.hpp"
#include "gtmm/lie.hpp"

using namespace gtmm;

TEST_CASE("lie_exponent_bound") {
    SUBCASE("real three-conjugates row: denominator 0 -> infinity") {
        for (long long n : {1LL, 2LL, 5LL, 10LL}) {
            long long h = n * (n - 1) / 2;
            CHECK(!lie_exponent_bound_exact(n * n, n, h, h, h).has_value());
            CHECK(std::isinf(lie_exponent_bound(n * n, n, h, h, h)));
        }
    }
    SUBCASE("abelian full-group construction gives exactly 3") {
        for (long long d : {1LL, 4LL, 7LL}) {
            auto r = lie_exponent_bound_exact(d, d, d, 0, 0);
            REQUIRE(r.has_value());
            CHECK(*r == Rat(3));
        }
    }
}

TEST_CASE("ktpp_exponent_bound reproduces the catalog values") {
    SUBCASE("complex n=2: 4/((12-4)/3 - 2) = 6") {
        auto r = ktpp_exponent_bound_exact(8, 4, 4, 4, 4, 2);
        REQUIRE(r.has_value());
        CHECK(*r == Rat(6));
    }
    SUBCASE("quaternion n=1: 4/((9-6)/3 - 0) = 4") {
        auto r = ktpp_exponent_bound_exact(4, 4, 3, 3, 3, 3);
        REQUIRE(r.has_value());
        CHECK(*r == Rat(4));
    }
    SUBCASE("values are n-independent along each family") {
        const LieConstruction& cplx = catalog_entry("three_conjugates_complex");
        const LieConstruction& quat = catalog_entry("three_conjugates_quaternion");
        const LieConstruction& real = catalog_entry("three_conjugates_real");
        for (long long n = 1; n <= 12; n++) {
            auto rc = construction_bound_exact(cplx, n, 1);
            REQUIRE(rc.has_value());
            CHECK(*rc == Rat(6));
            auto rq = construction_bound_exact(quat, n, 1);
            REQUIRE(rq.has_value());
            CHECK(*rq == Rat(4));
            CHECK(!construction_bound_exact(real, n, 1).has_value());
        }
    }
}

TEST_CASE("sln_power bound equals 3m(n-1)/(m(n-1)-n) exactly") {
    const LieConstruction& sln = catalog_entry("sln_power");
    for (long long m = 2; m <= 10; m++)
        for (long long n = 2; n <= 10; n++) {
            CAPTURE(m);
            CAPTURE(n);
            auto r = construction_bound_exact(sln, n, m);
            if (m * (n - 1) > n) {
                REQUIRE(r.has_value());
                CHECK(*r == Rat(3 * m * (n - 1), m * (n - 1) - n));
            } else {
                CHECK(!r.has_value());
            }
        }
    SUBCASE("(m,n) = (2,3) evaluates to 12") {
        auto r = construction_bound_exact(sln, 3, 2);
        REQUIRE(r.has_value());
        CHECK(*r == Rat(12));
    }
}

TEST_CASE("lie_packing_ratio") {
    SUBCASE("real family: 3n^2/(3 n(n-1)/2) = 2n/(n-1), decreasing to 2") {
        const LieConstruction& real = catalog_entry("three_conjugates_real");
        double prev = 1e18;
        for (long long n = 2; n <= 64; n++) {
            double r = lie_packing_ratio(real, n, 1);
            CHECK(r == doctest::Approx(2.0 * n / (n - 1.0)).epsilon(1e-12));
            CHECK(r < prev);
            prev = r;
        }
        CHECK(prev == doctest::Approx(2.0).epsilon(0.02));
    }
    SUBCASE("abelian full-group ratio is 3") {
        CHECK(lie_packing_ratio(6, 6, 0, 0) == doctest::Approx(3.0));
    }
    SUBCASE("quaternion family trends to 2") {
        const LieConstruction& quat = catalog_entry("three_conjugates_quaternion");
        double prev = 1e18;
        for (long long n = 1; n <= 64; n++) {
            double r = lie_packing_ratio(quat, n, 1);
            CHECK(r < prev);
            prev = r;
        }
        CHECK(prev == doctest::Approx(2.0).epsilon(0.05));
    }
}

TEST_CASE("builtin_catalog") {
    auto cat = builtin_catalog();
    REQUIRE(cat.size() == 5);
    SUBCASE("table rows carry the documented dimension data") {
        const LieConstruction& real = catalog_entry("three_conjugates_real");
        CHECK(real.ambient_dim(3, 1) == 9);
        CHECK(real.rank(3, 1) == 3);
        CHECK(real.h1(3, 1) == 3);
        CHECK(real.k_dim(3, 1) == 0);
        const LieConstruction& cplx = catalog_entry("three_conjugates_complex");
        CHECK(cplx.ambient_dim(3, 1) == 18);
        CHECK(cplx.rank(3, 1) == 6);
        CHECK(cplx.h1(3, 1) == 9);
        CHECK(cplx.k_dim(3, 1) == 3);
        const LieConstruction& quat = catalog_entry("three_conjugates_quaternion");
        CHECK(quat.ambient_dim(3, 1) == 36);
        CHECK(quat.rank(3, 1) == 12);
        CHECK(quat.h1(3, 1) == 21);
        CHECK(quat.k_dim(3, 1) == 9);
    }
    SUBCASE("every entry is flagged as meeting the packing bound") {
        for (const auto& c : cat) CHECK(c.meets_packing);
    }
    SUBCASE("every finite bound exceeds 2") {
        for (const auto& c : cat) {
            long long m = c.uses_m ? 3 : 1;
            for (long long n = 2; n <= 8; n++) {
                auto r = construction_bound_exact(c, n, m);
                if (r) CHECK(*r > Rat(2));
            }
        }
    }
    SUBCASE("unknown names are rejected") {
        CHECK_THROWS_AS(catalog_entry("nope"), InvalidSpec);
    }
}

TEST_CASE("dimension_feasibility_check") {
    SUBCASE("all catalog entries pass at small parameters") {
        for (const auto& c : builtin_catalog()) {
            long long m = c.uses_m ? 2 : 1;
            for (long long n = 2; n <= 10; n++) {
                CAPTURE(c.name);
                CAPTURE(n);
                CHECK(dimension_feasibility_check(c, n, m).pass);
            }
        }
    }
    SUBCASE("a corrupted entry with h_i = ambient fails") {
        LieConstruction bad = catalog_entry("three_conjugates_real");
        bad.h1 = bad.h2 = bad.h3 = bad.ambient_dim;
        FeasibilityReport r = dimension_feasibility_check(bad, 4, 1);
        CHECK(!r.pass);
        CHECK(!r.pair12);
    }
    SUBCASE("triple sum only checked for complex-algebraic entries") {
        const LieConstruction& cplx = catalog_entry("three_conjugates_complex");
        CHECK(!dimension_feasibility_check(cplx, 4, 1).triple.has_value());
        LieConstruction alg = cplx;
        alg.is_complex_algebraic = true;
        FeasibilityReport r = dimension_feasibility_check(alg, 4, 1);
        REQUIRE(r.triple.has_value());
        CHECK(!*r.triple);  // 3n^2 > 2n^2
        CHECK(!r.pass);
    }
}
