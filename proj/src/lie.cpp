#include "gtmm/lie.hpp"

#include <cmath>
#include <limits>

#include "gtmm/errors.hpp"

namespace gtmm {

std::string verifier_name(LieVerifier v) {
    switch (v) {
        case LieVerifier::none: return "none";
        case LieVerifier::three_conjugates_real: return "three_conjugates_real";
        case LieVerifier::three_conjugates_complex: return "three_conjugates_complex";
        case LieVerifier::three_conjugates_quaternion: return "three_conjugates_quaternion";
        case LieVerifier::sln_power: return "sln_power";
    }
    return "?";
}

std::optional<Rat> lie_exponent_bound_exact(long long ambient, long long rank,
                                            long long m1, long long m2, long long m3) {
    // denominator = (m1+m2+m3)/3 - (ambient-rank)/2, over a common denominator 6
    Rat denom(2 * (m1 + m2 + m3) - 3 * (ambient - rank), 6);
    if (denom <= Rat(0)) return std::nullopt;
    return Rat(rank) / denom;
}

double lie_exponent_bound(long long ambient, long long rank, long long m1, long long m2,
                          long long m3) {
    auto r = lie_exponent_bound_exact(ambient, rank, m1, m2, m3);
    if (!r) return std::numeric_limits<double>::infinity();
    return boost::rational_cast<double>(*r);
}

std::optional<Rat> ktpp_exponent_bound_exact(long long ambient, long long rank,
                                             long long h1, long long h2, long long h3,
                                             long long k_dim) {
    Rat denom(2 * (h1 + h2 + h3 - 2 * k_dim) - 3 * (ambient - rank), 6);
    if (denom <= Rat(0)) return std::nullopt;
    return Rat(rank) / denom;
}

double ktpp_exponent_bound(long long ambient, long long rank, long long h1, long long h2,
                           long long h3, long long k_dim) {
    auto r = ktpp_exponent_bound_exact(ambient, rank, h1, h2, h3, k_dim);
    if (!r) return std::numeric_limits<double>::infinity();
    return boost::rational_cast<double>(*r);
}

double lie_packing_ratio(long long ambient, long long m1, long long m2, long long m3) {
    return static_cast<double>(ambient) / (static_cast<double>(m1 + m2 + m3) / 3.0);
}

double lie_packing_ratio(const LieConstruction& c, long long n, long long m) {
    long long k = c.k_dim(n, m);
    return lie_packing_ratio(c.ambient_dim(n, m), c.h1(n, m), c.h2(n, m) - k,
                             c.h3(n, m) - k);
}

std::optional<Rat> construction_bound_exact(const LieConstruction& c, long long n,
                                            long long m) {
    return ktpp_exponent_bound_exact(c.ambient_dim(n, m), c.rank(n, m), c.h1(n, m),
                                     c.h2(n, m), c.h3(n, m), c.k_dim(n, m));
}

FeasibilityReport dimension_feasibility_check(const LieConstruction& c, long long n,
                                              long long m) {
    // effective submanifold dims after the slice reduction: the first factor
    // keeps its full dimension, the other two drop dim K
    long long d = c.ambient_dim(n, m);
    long long k = c.k_dim(n, m);
    long long a = c.h1(n, m), b = c.h2(n, m) - k, e = c.h3(n, m) - k;
    FeasibilityReport r;
    r.pair12 = a + b <= d;
    r.pair13 = a + e <= d;
    r.pair23 = b + e <= d;
    r.pass = r.pair12 && r.pair13 && r.pair23;
    if (c.is_complex_algebraic) {
        r.triple = a + b + e <= d;
        r.pass = r.pass && *r.triple;
    }
    return r;
}

std::vector<LieConstruction> builtin_catalog() {
    std::vector<LieConstruction> cat;

    LieConstruction real;
    real.name = "three_conjugates_real";
    real.ambient_dim = [](long long n, long long) { return n * n; };
    real.rank = [](long long n, long long) { return n; };
    real.h1 = real.h2 = real.h3 = [](long long n, long long) { return n * (n - 1) / 2; };
    real.k_dim = [](long long, long long) { return 0LL; };
    real.meets_packing = true;
    real.verifier = LieVerifier::three_conjugates_real;
    cat.push_back(real);

    LieConstruction cplx;
    cplx.name = "three_conjugates_complex";
    cplx.ambient_dim = [](long long n, long long) { return 2 * n * n; };
    cplx.rank = [](long long n, long long) { return 2 * n; };
    cplx.h1 = cplx.h2 = cplx.h3 = [](long long n, long long) { return n * n; };
    cplx.k_dim = [](long long n, long long) { return n; };
    // unitary groups are cut out with complex conjugation, not polynomials
    cplx.is_complex_algebraic = false;
    cplx.meets_packing = true;
    cplx.verifier = LieVerifier::three_conjugates_complex;
    cat.push_back(cplx);

    LieConstruction quat;
    quat.name = "three_conjugates_quaternion";
    quat.ambient_dim = [](long long n, long long) { return 4 * n * n; };
    quat.rank = [](long long n, long long) { return 4 * n; };
    quat.h1 = quat.h2 = quat.h3 = [](long long n, long long) { return n * (2 * n + 1); };
    quat.k_dim = [](long long n, long long) { return 3 * n; };
    quat.meets_packing = true;
    quat.verifier = LieVerifier::three_conjugates_quaternion;
    cat.push_back(quat);

    LieConstruction sln;
    sln.name = "sln_power";
    sln.ambient_dim = [](long long n, long long m) { return m * (n * n - 1); };
    sln.rank = [](long long n, long long m) { return m * (n - 1); };
    sln.h1 = sln.h2 = [](long long n, long long m) { return m * n * (n - 1) / 2; };
    sln.h3 = [](long long n, long long m) { return m * (n * (n + 1) / 2 - 1) - n; };
    sln.k_dim = [](long long, long long) { return 0LL; };
    sln.meets_packing = true;
    sln.uses_m = true;
    sln.verifier = LieVerifier::sln_power;
    cat.push_back(sln);

    // unitriangular / lower unitriangular / orthogonal in SL(n,R)
    LieConstruction tri;
    tri.name = "sl_triangular_orthogonal";
    tri.ambient_dim = [](long long n, long long) { return n * n - 1; };
    tri.rank = [](long long n, long long) { return n - 1; };
    tri.h1 = tri.h2 = tri.h3 = [](long long n, long long) { return n * (n - 1) / 2; };
    tri.k_dim = [](long long, long long) { return 0LL; };
    tri.meets_packing = true;
    cat.push_back(tri);

    return cat;
}

const LieConstruction& catalog_entry(const std::string& name) {
    static const std::vector<LieConstruction> cat = builtin_catalog();
    for (const auto& c : cat)
        if (c.name == name) return c;
    throw InvalidSpec("unknown construction '" + name + "'");
}

}  // namespace gtmm
