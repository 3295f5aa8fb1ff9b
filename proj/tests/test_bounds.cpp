#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gtmm/bounds.hpp"

using namespace gtmm;

namespace {

Group make(const std::string& spec) { return build_group(GroupSpec::parse(spec)); }

DegreeMultiset synthetic(std::vector<long> degrees) {
    DegreeMultiset dm;
    long order = 0;
    for (long d : degrees) order += d * d;
    dm.degrees = std::move(degrees);
    dm.group_order = order;
    return dm;
}

}  // namespace

TEST_CASE("omega_upper_bound closed forms") {
    SUBCASE("equal-degree multiset at stu = (sum d^2)^(3/2) solves to exactly 2") {
        // k copies of d: phi(alpha) = (alpha/2) ln(k d^2) - ln(k d^alpha),
        // root at alpha = 2 in closed form
        // square k keeps (k d^2)^(3/2) an integer, so stu sits exactly on the
        // alpha = 2 boundary
        for (long d : {2L, 3L, 5L})
            for (long k : {4L, 9L, 16L}) {
                DegreeMultiset dm = synthetic(std::vector<long>(k, d));
                long root = std::lround(std::sqrt(static_cast<double>(k)));  // exact
                long stu = root * k * d * d * d;  // (k d^2)^(3/2)
                CAPTURE(d);
                CAPTURE(k);
                BoundReport r = omega_upper_bound(stu, dm);
                CHECK(!r.vacuous);
                CHECK(r.omega_bound == doctest::Approx(2.0).epsilon(1e-7));
            }
    }
    SUBCASE("real-stu boundary gives exactly 2 for every multiplicity") {
        for (long d = 2; d <= 8; d++)
            for (long k = 2; k <= 8; k++) {
                DegreeMultiset dm = synthetic(std::vector<long>(k, d));
                double stu = std::pow(static_cast<double>(k * d * d), 1.5);
                CAPTURE(d);
                CAPTURE(k);
                BoundReport r = omega_upper_bound_real(stu, dm);
                CHECK(!r.vacuous);
                CHECK(r.omega_bound == doctest::Approx(2.0).epsilon(1e-9));
            }
    }
    SUBCASE("{2,2,2,2}, order 16, stu 64 -> 2 within 1e-9") {
        BoundReport r = omega_upper_bound(64, synthetic({2, 2, 2, 2}));
        CHECK(!r.vacuous);
        CHECK(r.omega_bound == doctest::Approx(2.0).epsilon(1e-9));
    }
    SUBCASE("all-ones degrees at stu = |G| sit on the vacuous boundary") {
        BoundReport r = omega_upper_bound(12, synthetic(std::vector<long>(12, 1)));
        CHECK(r.vacuous);
        CHECK(r.omega_bound == 3.0);
    }
    SUBCASE("S3 with stu = 6 is vacuous: sum d^3 = 10 >= 6") {
        BoundReport r = omega_upper_bound(6, irrep_degrees(make("family=symmetric;n=3")));
        CHECK(r.vacuous);
        CHECK(r.omega_bound == 3.0);
    }
}

TEST_CASE("omega_upper_bound is antitone in stu") {
    DegreeMultiset dm = synthetic({1, 1, 2, 3, 3});  // order 24
    double prev = 3.0;
    long cap = static_cast<long>(std::pow(24.0, 1.5));  // 117
    for (long stu = 1; stu <= cap; stu++) {
        BoundReport r = omega_upper_bound(stu, dm);
        CHECK(r.omega_bound <= prev + 1e-9);
        CHECK(r.omega_bound >= 2.0);
        CHECK(r.omega_bound <= 3.0);
        prev = r.omega_bound;
    }
}

TEST_CASE("omega_upper_bound error paths") {
    DegreeMultiset dm = synthetic({1, 1, 2});  // order 6
    CHECK_THROWS_AS(omega_upper_bound(0, dm), InconsistentInput);
    // 6^(3/2) ~ 14.7, so 15 is impossible for a genuine triple
    CHECK_THROWS_AS(omega_upper_bound(15, dm), InconsistentInput);
    CHECK_NOTHROW(omega_upper_bound(14, dm));
}

TEST_CASE("gowers_barrier") {
    CHECK(gowers_barrier(6, 2) == doctest::Approx(16.3923).epsilon(1e-4));
    CHECK(gowers_barrier(24, 2) == doctest::Approx(107.14).epsilon(1e-3));
    SUBCASE("n_g = 2 equals the sqrt-2 corollary value exactly") {
        for (long o : {6L, 24L, 60L, 120L})
            CHECK(gowers_barrier(o, 2) ==
                  std::pow(static_cast<double>(o), 1.5) / std::sqrt(2.0) +
                      static_cast<double>(o));
    }
    CHECK_THROWS_AS(gowers_barrier(6, 1), AbelianGroupError);
}

TEST_CASE("normalizer_barrier") {
    Group s3 = make("family=symmetric;n=3");
    Subgroup a3 = generate_subgroup(s3, {s3.index_of({1, 2, 0})});
    Subgroup trivial = generate_subgroup(s3, {});
    SUBCASE("S3 example: (A3, 1, 1) gives 6^(3/2)/72^(1/4) ~ 5.045") {
        double v = normalizer_barrier(s3, a3, trivial, trivial);
        CHECK(v == doctest::Approx(std::pow(6.0, 1.5) / std::pow(72.0, 0.25)).epsilon(1e-12));
        CHECK(v == doctest::Approx(5.045).epsilon(1e-3));
        CHECK(3.0 <= v);  // the triple's product respects the barrier
    }
    SUBCASE("self-normalizing subgroups give |G|^(3/2)") {
        Subgroup h = generate_subgroup(s3, {s3.index_of({1, 0, 2})});
        CHECK(normalizer_barrier(s3, h, h, h) ==
              doctest::Approx(std::pow(6.0, 1.5)).epsilon(1e-12));
    }
    SUBCASE("normal subgroups use s_i = |G|/|H_i|") {
        // H1 = A3 (normal), H2 = H3 = G: s = (2, 1, 1)
        std::vector<int> all;
        for (int i = 0; i < s3.order(); i++) all.push_back(i);
        Subgroup whole{&s3, all};
        CHECK(normalizer_barrier(s3, a3, whole, whole) ==
              doctest::Approx(std::pow(6.0, 1.5) / std::pow(2.0, 0.25)).epsilon(1e-12));
    }
}

TEST_CASE("subset_normalizer_barrier") {
    Group s3 = make("family=symmetric;n=3");
    std::vector<int> e = {s3.identity_index()};
    SUBCASE("all-identity sets give |G|^(3/2) ~ 14.697") {
        CHECK(subset_normalizer_barrier(s3, e, e, e) ==
              doctest::Approx(14.697).epsilon(1e-3));
    }
    SUBCASE("verified TPP subgroup triples respect the barrier") {
        for (const char* spec : {"family=symmetric;n=4", "family=dihedral;n=6"}) {
            Group g = make(spec);
            SearchConfig cfg;
            for (const auto& t : search_subgroup_triples(g, cfg))
                CHECK(static_cast<double>(t.product()) <=
                      subset_normalizer_barrier(g, t.s, t.t, t.u) + 1e-9);
        }
    }
}

TEST_CASE("center_barrier") {
    CHECK(center_barrier(make("family=quaternion_generalized;n=8")) ==
          doctest::Approx(16.0).epsilon(1e-12));
    SUBCASE("centerless groups give |G|^(3/2)") {
        CHECK(center_barrier(make("family=symmetric;n=3")) ==
              doctest::Approx(std::pow(6.0, 1.5)).epsilon(1e-12));
    }
    SUBCASE("abelian groups reduce to |G|") {
        CHECK(center_barrier(make("family=cyclic;n=10")) ==
              doctest::Approx(10.0).epsilon(1e-12));
    }
}

TEST_CASE("barrier_report") {
    SUBCASE("abelian group: no gowers value") {
        BarrierReport r = barrier_report(make("family=cyclic;n=8"), std::nullopt);
        CHECK(!r.n_g.has_value());
        CHECK(!r.gowers_value.has_value());
        CHECK(r.center_value == doctest::Approx(8.0));
    }
    SUBCASE("nonabelian group with a triple fills every field") {
        Group g = make("family=symmetric;n=4");
        SearchConfig cfg;
        auto triples = search_subgroup_triples(g, cfg);
        REQUIRE(!triples.empty());
        const TppTriple& t = triples.front();
        std::array<Subgroup, 3> hs = {Subgroup{&g, t.s}, Subgroup{&g, t.t},
                                      Subgroup{&g, t.u}};
        BarrierReport r = barrier_report(g, hs);
        CHECK(r.group_order == 24);
        CHECK(r.n_g == 2);
        REQUIRE(r.observed_max_product.has_value());
        CHECK(*r.observed_max_product == t.product());
        // every present barrier is >= |G| and >= the observed product
        for (double v : {*r.gowers_value, r.sqrt2_value, *r.normalizer_value,
                         *r.subset_normalizer_value, r.center_value}) {
            CHECK(v >= static_cast<double>(r.group_order) - 1e-9);
            CHECK(static_cast<double>(*r.observed_max_product) <= v + 1e-9);
        }
    }
}
