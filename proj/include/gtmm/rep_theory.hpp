#pragma once

#include <vector>

#include "gtmm/group.hpp"

namespace gtmm {

// Conjugacy-class structure constants. a[i][j][k] counts, for a fixed
// representative y of class j, the elements x of class i with x*y in class k;
// equivalently, the class sum of class i times y distributes over classes
// with these multiplicities, so sum_k a[i][j][k] = |class i|.
struct ClassData {
    std::vector<int> representatives;
    std::vector<long> class_sizes;
    std::vector<std::vector<std::vector<long>>> a;
    long group_order = 0;
};

ClassData class_structure_constants(const Group& g);

struct DegreeMultiset {
    std::vector<long> degrees;  // sorted ascending
    long group_order = 0;
};

// Irreducible representation degrees via simultaneous diagonalization of the
// class-multiplication matrices; results validated against sum d^2 = |G|,
// class-count and divisibility identities. Cached per group fingerprint.
DegreeMultiset irrep_degrees(const Group& g);

// Smallest degree > 1; throws AbelianGroupError on abelian groups.
long n_of_g(const Group& g);

// sum_i d_i^alpha, accumulated in extended precision.
double sum_degree_powers(const DegreeMultiset& d, double alpha);

}  // namespace gtmm
