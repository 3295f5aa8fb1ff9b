#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gtmm/group.hpp"

namespace gtmm {

// Q(X) = {x x'^-1 : x, x' in X}, as sorted element indices.
std::vector<int> quotient_set(const Group& g, const std::vector<int>& x);

// Triple product property on quotient sets: s t u = 1 with s in Q(S),
// t in Q(T), u in Q(U) forces s = t = u = 1. Two loops over Q(S) x Q(T) with
// a membership test of (st)^-1 against Q(U).
bool check_tpp(const Group& g, const std::vector<int>& s, const std::vector<int>& t,
               const std::vector<int>& u);

// K-relaxation for subgroups: every solution of h1 h2 h3 = 1 lies in K.
bool check_ktpp(const Group& g, const Subgroup& h1, const Subgroup& h2,
                const Subgroup& h3, const Subgroup& k);

// log(|S||T||U|) / log|G|; 3/2 is the packing-bound target.
double packing_ratio(long s, long t, long u, long order);

struct TppTriple {
    const Group* parent = nullptr;
    std::vector<int> s, t, u;  // sorted element indices
    bool subgroups = false;
    std::optional<bool> verdict;

    long product() const {
        return static_cast<long>(s.size()) * static_cast<long>(t.size()) *
               static_cast<long>(u.size());
    }
    double ratio() const;
};

struct SearchConfig {
    enum class Mode { exhaustive_subgroups, anneal_subsets };
    Mode mode = Mode::exhaustive_subgroups;
    long budget = 10000;       // anneal move count
    uint64_t seed = 1;
    double temperature = 1.0;  // initial temperature for annealing
    double cooling = 0.999;    // geometric decay per move
};

// All verified subgroup TPP triples (ordered triples), sorted by product
// descending; ties broken lexicographically for determinism.
std::vector<TppTriple> search_subgroup_triples(const Group& g, const SearchConfig& cfg);

// Seeded annealing over add/remove/swap moves on subset triples; the returned
// triple is always TPP-verified (worst case the trivial triple).
TppTriple search_subsets_anneal(const Group& g, const SearchConfig& cfg);

}  // namespace gtmm
