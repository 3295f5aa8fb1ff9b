#pragma once

#include <array>
#include <optional>

#include "gtmm/rep_theory.hpp"
#include "gtmm/tpp.hpp"

namespace gtmm {

struct BoundReport {
    long stu = 0;
    DegreeMultiset degrees;
    double omega_bound = 3.0;  // in [2, 3]
    bool vacuous = false;      // stu <= sum d^3, no bound better than 3
    bool clamped = false;      // root of phi fell below 2; clamped to 2
};

// Solve (stu)^(alpha/3) <= sum d^alpha for the smallest admissible alpha.
// phi(alpha) = (alpha/3) ln stu - ln sum d^alpha is concave; when phi(3) > 0
// the smallest root in [2,3] is found by bisection to 1e-9. Throws
// InconsistentInput when stu exceeds |G|^(3/2).
BoundReport omega_upper_bound(long stu, const DegreeMultiset& degrees);

// Real-stu variant for boundary analysis: the equal-degree family sits
// exactly on stu = (sum d^2)^(3/2), which is not an integer unless the
// multiplicity is a perfect square. Only ln(stu) enters the solve.
BoundReport omega_upper_bound_real(double stu, const DegreeMultiset& degrees);

// |G|^(3/2) / n(G)^(1/2) + |G|; requires n_g >= 2.
double gowers_barrier(long order, long n_g);

// |G|^(3/2) / (s1 s2 s3)^(1/4) with s_i = |N(H_i)|/|H_i|.
double normalizer_barrier(const Group& g, const Subgroup& h1, const Subgroup& h2,
                          const Subgroup& h3);

// Subset version: (|G|^3 / (|N(Q(S)) cap T| |N(Q(T)) cap U| |N(Q(U)) cap S|))^(1/2).
double subset_normalizer_barrier(const Group& g, const std::vector<int>& s,
                                 const std::vector<int>& t, const std::vector<int>& u);

// |G|^(3/2) / |Z(G)|^(1/2).
double center_barrier(const Group& g);

struct BarrierReport {
    long group_order = 0;
    std::optional<long> n_g;
    std::optional<double> gowers_value;
    double sqrt2_value = 0.0;
    std::optional<double> normalizer_value;
    std::optional<double> subset_normalizer_value;
    double center_value = 0.0;
    std::optional<long> observed_max_product;
};

// Evaluates every barrier that is defined for g; the subgroup triple is
// optional and only feeds the normalizer barriers.
BarrierReport barrier_report(const Group& g,
                             const std::optional<std::array<Subgroup, 3>>& triple);

}  // namespace gtmm
