#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gtmm/errors.hpp"

namespace gtmm {

// Canonical element encoding: a fixed-length integer tuple per group family.
// Two elements of the same group are equal iff their encodings are identical.
using Element = std::vector<int32_t>;

struct ElementHash {
    size_t operator()(const Element& e) const {
        size_t h = 1469598103934665603ull;
        for (int32_t v : e) {
            h ^= static_cast<size_t>(static_cast<uint32_t>(v));
            h *= 1099511628211ull;
        }
        return h;
    }
};

enum class Family {
    cyclic,
    abelian_product,
    dihedral,
    symmetric,
    alternating,
    quaternion_generalized,
    heisenberg_mod_p,
    GL2q,
    SL2q,
    direct_product,
};

std::string family_name(Family f);

struct GroupSpec {
    Family family = Family::cyclic;
    std::vector<long> params;         // n, p, q or factor sizes, depending on family
    std::vector<GroupSpec> factors;   // direct_product only

    // Text form, e.g. "family=SL2q;q=5" or
    // "family=direct_product;factors=[family=SL2q;q=3 | family=cyclic;n=4]".
    static GroupSpec parse(const std::string& text);
    std::string render() const;

    // Order the group would have, without building it. Throws InvalidSpec.
    long projected_order() const;
    void validate() const;
};

inline constexpr long kDefaultOrderCap = 100000;
inline constexpr long kDefaultSubgroupEnumCap = 512;

// Caps can be overridden through the environment (GTMM_ORDER_CAP,
// GTMM_SUBGROUP_CAP).
long order_cap();
long subgroup_enum_cap();

namespace detail {
class GroupOps;
}

// A finite group with materialized, deterministically ordered elements.
// Immutable after construction; safe to share across threads.
class Group {
  public:
    explicit Group(GroupSpec spec, long cap = order_cap());

    const GroupSpec& spec() const { return spec_; }
    long order() const { return static_cast<long>(elements_.size()); }
    bool is_abelian() const { return abelian_; }
    const std::vector<Element>& elements() const { return elements_; }
    const Element& element(int i) const { return elements_[static_cast<size_t>(i)]; }
    const Element& identity() const { return elements_[static_cast<size_t>(identity_)]; }
    int identity_index() const { return identity_; }

    bool contains(const Element& e) const { return index_.count(e) != 0; }
    int index_of(const Element& e) const;

    Element multiply(const Element& a, const Element& b) const;
    Element inverse(const Element& a) const;

    // Index-level arithmetic; backed by a Cayley table for small orders.
    int mul(int i, int j) const;
    int inv(int i) const { return inverse_[static_cast<size_t>(i)]; }

    // Canonical identifier used for caching (the rendered spec).
    const std::string& fingerprint() const { return fingerprint_; }

  private:
    GroupSpec spec_;
    std::shared_ptr<const detail::GroupOps> ops_;
    std::vector<Element> elements_;
    std::unordered_map<Element, int, ElementHash> index_;
    std::vector<int> inverse_;
    std::vector<int32_t> cayley_;  // row-major, empty when order > table cap
    int identity_ = 0;
    bool abelian_ = false;
    std::string fingerprint_;
};

Group build_group(const GroupSpec& spec, long cap = order_cap());

// A subgroup, stored as sorted element indices into the parent.
struct Subgroup {
    const Group* parent = nullptr;
    std::vector<int> elements;  // sorted, unique

    long order() const { return static_cast<long>(elements.size()); }
    bool contains(int idx) const;
};

Subgroup generate_subgroup(const Group& g, const std::vector<int>& generators);

struct ConjugacyClasses {
    std::vector<int> representatives;        // one per class; class 0 is the identity's
    std::vector<std::vector<int>> classes;   // sorted element indices
    std::vector<int> class_of;               // element index -> class index
    size_t count() const { return classes.size(); }
};

ConjugacyClasses conjugacy_classes(const Group& g);

Subgroup center(const Group& g);

// N(X) = {g : gXg^-1 = X} for a nonempty subset X (given as element indices).
Subgroup normalizer(const Group& g, const std::vector<int>& x);

// All subgroups, found by extending known subgroups with cyclic generators
// until fixpoint. Requires |G| <= cap.
std::vector<Subgroup> enumerate_subgroups(const Group& g, long cap = subgroup_enum_cap());

}  // namespace gtmm
