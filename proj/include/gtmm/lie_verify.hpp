#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gtmm/lie.hpp"

namespace gtmm {

struct VerifyOptions {
    int restarts = 200;
    uint64_t seed = 1;
    double residual_tol = 1e-10;
    double membership_tol = 1e-6;
    int max_iterations = 400;
    // negative control: collapse the two diagonal conjugators to the same
    // matrix, breaking the ordering hypotheses of the construction
    bool degenerate_conjugators = false;
};

struct Violation {
    int restart = 0;
    double residual = 0.0;
    double distance = 0.0;
    std::vector<double> params;
};

enum class Verdict { consistent, violated, inconclusive };

std::string verdict_name(Verdict v);

struct VerificationReport {
    std::string construction;
    long long n = 0, m = 0;
    int restarts = 0;
    int converged_count = 0;
    double worst_residual = 0.0;    // largest residual among converged restarts
    double best_residual = 0.0;     // smallest residual seen overall
    double max_distance_to_K = 0.0; // over converged restarts
    std::vector<Violation> violations;
    Verdict verdict = Verdict::inconclusive;
};

// Falsification harness for the K-triple-product property of the catalog
// constructions: seeded random restarts of a quasi-Newton minimizer on the
// defining residual; converged points far from K are reported as violations.
VerificationReport verify_ktpp_numeric(const LieConstruction& c, long long n, long long m,
                                       const VerifyOptions& opts);

}  // namespace gtmm
