#pragma once

#include <boost/rational.hpp>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gtmm {

using Rat = boost::rational<long long>;

// Integer-valued dimension formula in (n, m).
using DimFormula = std::function<long long(long long n, long long m)>;

enum class LieVerifier {
    none,
    three_conjugates_real,
    three_conjugates_complex,
    three_conjugates_quaternion,
    sln_power,
};

std::string verifier_name(LieVerifier v);

struct LieConstruction {
    std::string name;
    DimFormula ambient_dim;
    DimFormula rank;
    DimFormula h1, h2, h3;  // subgroup dimensions
    DimFormula k_dim;
    bool is_complex_algebraic = false;
    bool meets_packing = false;  // catalog datum
    bool uses_m = false;
    LieVerifier verifier = LieVerifier::none;
};

// rank / ((m1+m2+m3)/3 - (ambient-rank)/2), or infinity when the denominator
// is not positive. Exact variant returns nullopt for infinity.
std::optional<Rat> lie_exponent_bound_exact(long long ambient, long long rank,
                                            long long m1, long long m2, long long m3);
double lie_exponent_bound(long long ambient, long long rank, long long m1, long long m2,
                          long long m3);

// K-relaxed version: rank / ((h1+h2+h3 - 2k)/3 - (ambient-rank)/2).
std::optional<Rat> ktpp_exponent_bound_exact(long long ambient, long long rank,
                                             long long h1, long long h2, long long h3,
                                             long long k_dim);
double ktpp_exponent_bound(long long ambient, long long rank, long long h1, long long h2,
                           long long h3, long long k_dim);

// Effective-dimension packing ratio: ambient / ((h1 + (h2-k) + (h3-k))/3).
// The first factor keeps its full dimension under the slice reduction.
double lie_packing_ratio(long long ambient, long long m1, long long m2, long long m3);
double lie_packing_ratio(const LieConstruction& c, long long n, long long m);

// Exact Lie bound for a catalog entry at (n, m).
std::optional<Rat> construction_bound_exact(const LieConstruction& c, long long n,
                                            long long m);

struct FeasibilityReport {
    bool pair12 = false, pair13 = false, pair23 = false;
    std::optional<bool> triple;  // only checked for complex-algebraic entries
    bool pass = false;
};

FeasibilityReport dimension_feasibility_check(const LieConstruction& c, long long n,
                                              long long m);

// Three-conjugates rows (real / complex / quaternionic), the SL(n,R)^m
// power construction, and the triangular/orthogonal packing construction.
std::vector<LieConstruction> builtin_catalog();

const LieConstruction& catalog_entry(const std::string& name);

}  // namespace gtmm
