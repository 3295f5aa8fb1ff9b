#include "gtmm/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace gtmm {

std::string family_name(Family f) {
    switch (f) {
        case Family::cyclic: return "cyclic";
        case Family::abelian_product: return "abelian_product";
        case Family::dihedral: return "dihedral";
        case Family::symmetric: return "symmetric";
        case Family::alternating: return "alternating";
        case Family::quaternion_generalized: return "quaternion_generalized";
        case Family::heisenberg_mod_p: return "heisenberg_mod_p";
        case Family::GL2q: return "GL2q";
        case Family::SL2q: return "SL2q";
        case Family::direct_product: return "direct_product";
    }
    return "?";
}

static std::optional<Family> family_from_name(const std::string& s) {
    for (Family f : {Family::cyclic, Family::abelian_product, Family::dihedral,
                     Family::symmetric, Family::alternating, Family::quaternion_generalized,
                     Family::heisenberg_mod_p, Family::GL2q, Family::SL2q,
                     Family::direct_product}) {
        if (family_name(f) == s) return f;
    }
    return std::nullopt;
}

long order_cap() {
    if (const char* s = std::getenv("GTMM_ORDER_CAP")) {
        long v = std::atol(s);
        if (v > 0) return v;
    }
    return kDefaultOrderCap;
}

long subgroup_enum_cap() {
    if (const char* s = std::getenv("GTMM_SUBGROUP_CAP")) {
        long v = std::atol(s);
        if (v > 0) return v;
    }
    return kDefaultSubgroupEnumCap;
}

// ---------------------------------------------------------------------------
// Spec text format

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

// Split on ';' at bracket depth 0.
std::vector<std::string> split_fields(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '[') depth++;
        if (c == ']') depth--;
        if (c == ';' && depth == 0) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty()) out.push_back(cur);
    return out;
}

long parse_long(const std::string& s, const std::string& ctx) {
    try {
        size_t pos = 0;
        long v = std::stol(trim(s), &pos);
        if (pos != trim(s).size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw InvalidSpec("bad integer '" + s + "' in " + ctx);
    }
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; d++)
        if (n % d == 0) return false;
    return true;
}

// q = p^k with p prime, k >= 1; returns (p, k) or nullopt.
std::optional<std::pair<long, long>> prime_power(long q) {
    if (q < 2) return std::nullopt;
    for (long p = 2; p * p <= q; p++) {
        if (q % p == 0) {
            long k = 0, m = q;
            while (m % p == 0) { m /= p; k++; }
            if (m != 1) return std::nullopt;
            return std::make_pair(p, k);
        }
    }
    return std::make_pair(q, 1L);  // q itself prime
}

long factorial_checked(long n, const char* ctx) {
    long r = 1;
    for (long i = 2; i <= n; i++) {
        if (r > kDefaultOrderCap * 1000) throw InvalidSpec(std::string(ctx) + ": n too large");
        r *= i;
    }
    return r;
}

}  // namespace

GroupSpec GroupSpec::parse(const std::string& text) {
    GroupSpec spec;
    bool have_family = false;
    for (const std::string& raw : split_fields(trim(text))) {
        std::string field = trim(raw);
        size_t eq = field.find('=');
        if (eq == std::string::npos) throw InvalidSpec("expected key=value, got '" + field + "'");
        std::string key = trim(field.substr(0, eq));
        std::string val = trim(field.substr(eq + 1));
        if (key == "family") {
            auto f = family_from_name(val);
            if (!f) throw InvalidSpec("unknown family '" + val + "'");
            spec.family = *f;
            have_family = true;
        } else if (key == "n" || key == "p" || key == "q") {
            spec.params.push_back(parse_long(val, "spec"));
        } else if (key == "ns") {
            std::stringstream ss(val);
            std::string tok;
            while (std::getline(ss, tok, ','))
                spec.params.push_back(parse_long(tok, "ns"));
        } else if (key == "factors") {
            if (val.size() < 2 || val.front() != '[' || val.back() != ']')
                throw InvalidSpec("factors must be bracketed: " + val);
            std::string inner = val.substr(1, val.size() - 2);
            // split on '|' at depth 0
            int depth = 0;
            std::string cur;
            std::vector<std::string> parts;
            for (char c : inner) {
                if (c == '[') depth++;
                if (c == ']') depth--;
                if (c == '|' && depth == 0) {
                    parts.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            if (!trim(cur).empty()) parts.push_back(cur);
            for (const auto& p : parts) spec.factors.push_back(GroupSpec::parse(p));
        } else {
            throw InvalidSpec("unknown spec key '" + key + "'");
        }
    }
    if (!have_family) throw InvalidSpec("spec missing family: '" + text + "'");
    spec.validate();
    return spec;
}

std::string GroupSpec::render() const {
    std::ostringstream os;
    os << "family=" << family_name(family);
    switch (family) {
        case Family::cyclic:
        case Family::dihedral:
        case Family::symmetric:
        case Family::alternating:
        case Family::quaternion_generalized:
            os << ";n=" << params.at(0);
            break;
        case Family::heisenberg_mod_p:
            os << ";p=" << params.at(0);
            break;
        case Family::GL2q:
        case Family::SL2q:
            os << ";q=" << params.at(0);
            break;
        case Family::abelian_product: {
            os << ";ns=";
            for (size_t i = 0; i < params.size(); i++)
                os << (i ? "," : "") << params[i];
            break;
        }
        case Family::direct_product: {
            os << ";factors=[";
            for (size_t i = 0; i < factors.size(); i++)
                os << (i ? " | " : "") << factors[i].render();
            os << "]";
            break;
        }
    }
    return os.str();
}

void GroupSpec::validate() const {
    auto need_one_param = [&](const char* name, long min) {
        if (params.size() != 1) throw InvalidSpec(std::string(name) + " takes one parameter");
        if (params[0] < min)
            throw InvalidSpec(std::string(name) + ": parameter must be >= " + std::to_string(min));
    };
    switch (family) {
        case Family::cyclic: need_one_param("cyclic", 1); break;
        case Family::dihedral: need_one_param("dihedral", 1); break;
        case Family::symmetric: need_one_param("symmetric", 1); break;
        case Family::alternating: need_one_param("alternating", 1); break;
        case Family::quaternion_generalized:
            need_one_param("quaternion_generalized", 8);
            if (params[0] % 4 != 0)
                throw InvalidSpec("quaternion_generalized: order must be divisible by 4");
            break;
        case Family::heisenberg_mod_p:
            need_one_param("heisenberg_mod_p", 2);
            if (!is_prime(params[0])) throw InvalidSpec("heisenberg_mod_p: p must be prime");
            break;
        case Family::GL2q:
        case Family::SL2q:
            need_one_param(family == Family::GL2q ? "GL2q" : "SL2q", 2);
            if (!prime_power(params[0]))
                throw InvalidSpec("GL2q/SL2q: q must be a prime power");
            break;
        case Family::abelian_product:
            if (params.empty()) throw InvalidSpec("abelian_product needs at least one factor");
            for (long n : params)
                if (n < 1) throw InvalidSpec("abelian_product: factors must be >= 1");
            break;
        case Family::direct_product:
            if (factors.empty()) throw InvalidSpec("direct_product needs at least one factor");
            for (const auto& f : factors) f.validate();
            break;
    }
}

long GroupSpec::projected_order() const {
    switch (family) {
        case Family::cyclic: return params[0];
        case Family::dihedral: return 2 * params[0];
        case Family::symmetric: return factorial_checked(params[0], "symmetric");
        case Family::alternating:
            return params[0] <= 2 ? 1 : factorial_checked(params[0], "alternating") / 2;
        case Family::quaternion_generalized: return params[0];
        case Family::heisenberg_mod_p: return params[0] * params[0] * params[0];
        case Family::GL2q: {
            long q = params[0];
            return (q * q - 1) * (q * q - q);
        }
        case Family::SL2q: {
            long q = params[0];
            return q * q * q - q;
        }
        case Family::abelian_product: {
            long r = 1;
            for (long n : params) {
                if (r > kDefaultOrderCap * 1000 / std::max(n, 1L))
                    throw InvalidSpec("abelian_product: order overflow");
                r *= n;
            }
            return r;
        }
        case Family::direct_product: {
            long r = 1;
            for (const auto& f : factors) {
                long o = f.projected_order();
                if (o != 0 && r > kDefaultOrderCap * 1000 / o)
                    throw InvalidSpec("direct_product: order overflow");
                r *= o;
            }
            return r;
        }
    }
    throw InvalidSpec("bad family");
}

// ---------------------------------------------------------------------------
// Finite field F_q (q = p^k), elements 0..q-1 as base-p digit strings.

namespace {

struct Fq {
    long p = 0, k = 0, q = 0;
    std::vector<int32_t> mul_t, add_t, inv_t, neg_t;

    int32_t add(int32_t a, int32_t b) const { return add_t[a * q + b]; }
    int32_t mul(int32_t a, int32_t b) const { return mul_t[a * q + b]; }
    int32_t neg(int32_t a) const { return neg_t[a]; }
    int32_t inv(int32_t a) const { return inv_t[a]; }
};

std::vector<long> digits(long x, long p, long k) {
    std::vector<long> d(k);
    for (long i = 0; i < k; i++) { d[i] = x % p; x /= p; }
    return d;
}

long undigits(const std::vector<long>& d, long p) {
    long x = 0;
    for (size_t i = d.size(); i-- > 0;) x = x * p + d[i];
    return x;
}

// Multiply polynomials mod the monic irreducible f (coeffs of degree < k).
long poly_mulmod(long a, long b, long p, long k, const std::vector<long>& f) {
    std::vector<long> da = digits(a, p, k), db = digits(b, p, k);
    std::vector<long> prod(2 * k - 1, 0);
    for (long i = 0; i < k; i++)
        for (long j = 0; j < k; j++)
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    for (long d = 2 * k - 2; d >= k; d--) {
        long c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (long i = 0; i < k; i++)
            prod[d - k + i] = ((prod[d - k + i] - c * f[i]) % p + p) % p;
    }
    prod.resize(k);
    return undigits(prod, p);
}

// Smallest monic irreducible polynomial of degree k over F_p, as its k lower
// coefficients (x^k + f[k-1] x^{k-1} + ... + f[0]).
std::vector<long> find_irreducible(long p, long k) {
    long pk = 1;
    for (long i = 0; i < k; i++) pk *= p;
    for (long code = 0; code < pk; code++) {
        std::vector<long> f = digits(code, p, k);
        // candidate is irreducible iff no monic divisor of degree 1..k/2
        bool reducible = false;
        for (long deg = 1; deg <= k / 2 && !reducible; deg++) {
            long pd = 1;
            for (long i = 0; i < deg; i++) pd *= p;
            for (long dc = 0; dc < pd && !reducible; dc++) {
                std::vector<long> g = digits(dc, p, deg);
                g.push_back(1);  // monic divisor candidate
                // trial division of x^k + f by g
                std::vector<long> r = f;
                r.push_back(1);
                for (long d = k; d >= deg; d--) {
                    long c = r[d];
                    if (c == 0) continue;
                    for (long i = 0; i <= deg; i++)
                        r[d - deg + i] = ((r[d - deg + i] - c * g[i]) % p + p) % p;
                }
                bool zero = true;
                for (long i = 0; i < deg; i++)
                    if (r[i] != 0) zero = false;
                if (zero) reducible = true;
            }
        }
        if (!reducible) return f;
    }
    throw InvalidSpec("no irreducible polynomial found");  // unreachable
}

Fq make_field(long q) {
    auto pk = prime_power(q);
    Fq F;
    F.p = pk->first;
    F.k = pk->second;
    F.q = q;
    std::vector<long> f;
    if (F.k > 1) f = find_irreducible(F.p, F.k);
    F.add_t.resize(q * q);
    F.mul_t.resize(q * q);
    F.neg_t.resize(q);
    F.inv_t.assign(q, 0);
    for (long a = 0; a < q; a++) {
        auto da = digits(a, F.p, F.k);
        std::vector<long> dn(F.k);
        for (long i = 0; i < F.k; i++) dn[i] = (F.p - da[i]) % F.p;
        F.neg_t[a] = static_cast<int32_t>(undigits(dn, F.p));
        for (long b = 0; b < q; b++) {
            auto db = digits(b, F.p, F.k);
            std::vector<long> ds(F.k);
            for (long i = 0; i < F.k; i++) ds[i] = (da[i] + db[i]) % F.p;
            F.add_t[a * q + b] = static_cast<int32_t>(undigits(ds, F.p));
            long m = (F.k == 1) ? (a * b) % F.p : poly_mulmod(a, b, F.p, F.k, f);
            F.mul_t[a * q + b] = static_cast<int32_t>(m);
            if (m == 1) F.inv_t[a] = static_cast<int32_t>(b);
        }
    }
    return F;
}

}  // namespace

// ---------------------------------------------------------------------------
// Per-family operations

namespace detail {

class GroupOps {
  public:
    virtual ~GroupOps() = default;
    virtual Element identity() const = 0;
    virtual Element multiply(const Element& a, const Element& b) const = 0;
    virtual Element inverse(const Element& a) const = 0;
    virtual std::vector<Element> enumerate() const = 0;
    virtual size_t encoding_length() const = 0;
    virtual bool abelian() const = 0;
};

}  // namespace detail

namespace {

using detail::GroupOps;

class CyclicOps final : public GroupOps {
  public:
    explicit CyclicOps(long n) : n_(static_cast<int32_t>(n)) {}
    Element identity() const override { return {0}; }
    Element multiply(const Element& a, const Element& b) const override {
        return {static_cast<int32_t>((a[0] + b[0]) % n_)};
    }
    Element inverse(const Element& a) const override {
        return {static_cast<int32_t>((n_ - a[0]) % n_)};
    }
    std::vector<Element> enumerate() const override {
        std::vector<Element> out;
        for (int32_t x = 0; x < n_; x++) out.push_back({x});
        return out;
    }
    size_t encoding_length() const override { return 1; }
    bool abelian() const override { return true; }

  private:
    int32_t n_;
};

class AbelianProductOps final : public GroupOps {
  public:
    explicit AbelianProductOps(std::vector<long> ns) {
        for (long n : ns) ns_.push_back(static_cast<int32_t>(n));
    }
    Element identity() const override { return Element(ns_.size(), 0); }
    Element multiply(const Element& a, const Element& b) const override {
        Element r(ns_.size());
        for (size_t i = 0; i < ns_.size(); i++) r[i] = (a[i] + b[i]) % ns_[i];
        return r;
    }
    Element inverse(const Element& a) const override {
        Element r(ns_.size());
        for (size_t i = 0; i < ns_.size(); i++) r[i] = (ns_[i] - a[i]) % ns_[i];
        return r;
    }
    std::vector<Element> enumerate() const override {
        std::vector<Element> out{identity()};
        for (size_t i = ns_.size(); i-- > 0;) {
            std::vector<Element> next;
            for (int32_t v = 0; v < ns_[i]; v++)
                for (auto e : out) {
                    e[i] = v;
                    next.push_back(e);
                }
            out = next;
        }
        // regenerate in lexicographic order
        std::sort(out.begin(), out.end());
        return out;
    }
    size_t encoding_length() const override { return ns_.size(); }
    bool abelian() const override { return true; }

  private:
    std::vector<int32_t> ns_;
};

// Dihedral group of order 2n: (r, s) = rotation^r * flip^s.
class DihedralOps final : public GroupOps {
  public:
    explicit DihedralOps(long n) : n_(static_cast<int32_t>(n)) {}
    Element identity() const override { return {0, 0}; }
    Element multiply(const Element& a, const Element& b) const override {
        int32_t r = a[1] ? (a[0] - b[0] + n_) % n_ : (a[0] + b[0]) % n_;
        return {r, static_cast<int32_t>(a[1] ^ b[1])};
    }
    Element inverse(const Element& a) const override {
        if (a[1]) return a;  // reflections are involutions
        return {static_cast<int32_t>((n_ - a[0]) % n_), 0};
    }
    std::vector<Element> enumerate() const override {
        std::vector<Element> out;
        for (int32_t s = 0; s < 2; s++)
            for (int32_t r = 0; r < n_; r++) out.push_back({r, s});
        return out;
    }
    size_t encoding_length() const override { return 2; }
    bool abelian() const override { return n_ <= 2; }

  private:
    int32_t n_;
};

// Generalized quaternion / dicyclic group of order 4m:
// a^(2m) = 1, b^2 = a^m, b a b^-1 = a^-1; element (r, s) = a^r b^s.
class DicyclicOps final : public GroupOps {
  public:
    explicit DicyclicOps(long order) : m_(static_cast<int32_t>(order / 4)) {}
    Element identity() const override { return {0, 0}; }
    Element multiply(const Element& a, const Element& b) const override {
        int32_t two_m = 2 * m_;
        if (a[1] == 0) return {static_cast<int32_t>((a[0] + b[0]) % two_m), b[1]};
        if (b[1] == 0) return {static_cast<int32_t>((a[0] - b[0] + two_m) % two_m), 1};
        return {static_cast<int32_t>((a[0] - b[0] + m_ + 2 * two_m) % two_m), 0};
    }
    Element inverse(const Element& a) const override {
        int32_t two_m = 2 * m_;
        if (a[1] == 0) return {static_cast<int32_t>((two_m - a[0]) % two_m), 0};
        // (a^r b)^-1 = a^(r+m) b
        return {static_cast<int32_t>((a[0] + m_) % two_m), 1};
    }
    std::vector<Element> enumerate() const override {
        std::vector<Element> out;
        for (int32_t s = 0; s < 2; s++)
            for (int32_t r = 0; r < 2 * m_; r++) out.push_back({r, s});
        return out;
    }
    size_t encoding_length() const override { return 2; }
    bool abelian() const override { return false; }

  private:
    int32_t m_;
};

// Permutations in one-line image form.
class SymmetricOps : public GroupOps {
  public:
    explicit SymmetricOps(long n) : n_(static_cast<size_t>(n)) {}
    Element identity() const override {
        Element e(n_);
        std::iota(e.begin(), e.end(), 0);
        return e;
    }
    Element multiply(const Element& a, const Element& b) const override {
        // (a*b)(x) = a(b(x))
        Element r(n_);
        for (size_t i = 0; i < n_; i++) r[i] = a[static_cast<size_t>(b[i])];
        return r;
    }
    Element inverse(const Element& a) const override {
        Element r(n_);
        for (size_t i = 0; i < n_; i++) r[static_cast<size_t>(a[i])] = static_cast<int32_t>(i);
        return r;
    }
    std::vector<Element> enumerate() const override {
        std::vector<Element> out;
        Element p = identity();
        do {
            out.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }
    size_t encoding_length() const override { return n_; }
    bool abelian() const override { return n_ <= 2; }

  protected:
    size_t n_;
};

class AlternatingOps final : public SymmetricOps {
  public:
    explicit AlternatingOps(long n) : SymmetricOps(n) {}
    std::vector<Element> enumerate() const override {
        std::vector<Element> out;
        Element p = identity();
        do {
            if (parity(p) == 0) out.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        return out;
    }
    bool abelian() const override { return n_ <= 3; }

  private:
    static int parity(const Element& p) {
        int inv = 0;
        for (size_t i = 0; i < p.size(); i++)
            for (size_t j = i + 1; j < p.size(); j++)
                if (p[i] > p[j]) inv ^= 1;
        return inv;
    }
};

// Heisenberg group mod p: unitriangular 3x3 matrices, encoded [p, a, b, c]
// for rows (1 a c / 0 1 b / 0 0 1).
class HeisenbergOps final : public GroupOps {
  public:
    explicit HeisenbergOps(long p) : p_(static_cast<int32_t>(p)) {}
    Element identity() const override { return {p_, 0, 0, 0}; }
    Element multiply(const Element& x, const Element& y) const override {
        int32_t a = (x[1] + y[1]) % p_;
        int32_t b = (x[2] + y[2]) % p_;
        int32_t c = static_cast<int32_t>((x[3] + y[3] + static_cast<long>(x[1]) * y[2]) % p_);
        return {p_, a, b, c};
    }
    Element inverse(const Element& x) const override {
        int32_t a = (p_ - x[1]) % p_;
        int32_t b = (p_ - x[2]) % p_;
        int32_t c = static_cast<int32_t>(((static_cast<long>(x[1]) * x[2] - x[3]) % p_ + p_) % p_);
        return {p_, a, b, c};
    }
    std::vector<Element> enumerate() const override {
        std::vector<Element> out;
        for (int32_t a = 0; a < p_; a++)
            for (int32_t b = 0; b < p_; b++)
                for (int32_t c = 0; c < p_; c++) out.push_back({p_, a, b, c});
        return out;
    }
    size_t encoding_length() const override { return 4; }
    bool abelian() const override { return false; }

  private:
    int32_t p_;
};

// 2x2 matrices over F_q, encoded [q, a, b, c, d] row-major.
class Matrix2Ops final : public GroupOps {
  public:
    Matrix2Ops(long q, bool special) : F_(make_field(q)), special_(special) {}
    Element identity() const override {
        return {static_cast<int32_t>(F_.q), 1, 0, 0, 1};
    }
    Element multiply(const Element& x, const Element& y) const override {
        int32_t a = F_.add(F_.mul(x[1], y[1]), F_.mul(x[2], y[3]));
        int32_t b = F_.add(F_.mul(x[1], y[2]), F_.mul(x[2], y[4]));
        int32_t c = F_.add(F_.mul(x[3], y[1]), F_.mul(x[4], y[3]));
        int32_t d = F_.add(F_.mul(x[3], y[2]), F_.mul(x[4], y[4]));
        return {static_cast<int32_t>(F_.q), a, b, c, d};
    }
    Element inverse(const Element& x) const override {
        int32_t det = F_.add(F_.mul(x[1], x[4]), F_.neg(F_.mul(x[2], x[3])));
        int32_t di = F_.inv(det);
        return {static_cast<int32_t>(F_.q), F_.mul(di, x[4]), F_.mul(di, F_.neg(x[2])),
                F_.mul(di, F_.neg(x[3])), F_.mul(di, x[1])};
    }
    std::vector<Element> enumerate() const override {
        std::vector<Element> out;
        int32_t q = static_cast<int32_t>(F_.q);
        for (int32_t a = 0; a < q; a++)
            for (int32_t b = 0; b < q; b++)
                for (int32_t c = 0; c < q; c++)
                    for (int32_t d = 0; d < q; d++) {
                        int32_t det = F_.add(F_.mul(a, d), F_.neg(F_.mul(b, c)));
                        if (special_ ? det == 1 : det != 0)
                            out.push_back({q, a, b, c, d});
                    }
        return out;
    }
    size_t encoding_length() const override { return 5; }
    bool abelian() const override { return false; }

  private:
    Fq F_;
    bool special_;
};

// Tuples of factor elements, encodings concatenated.
class DirectProductOps final : public GroupOps {
  public:
    explicit DirectProductOps(std::vector<std::shared_ptr<const GroupOps>> parts)
        : parts_(std::move(parts)) {
        size_t off = 0;
        for (const auto& p : parts_) {
            offsets_.push_back(off);
            off += p->encoding_length();
        }
        len_ = off;
    }
    Element identity() const override {
        Element e;
        for (const auto& p : parts_) {
            Element pe = p->identity();
            e.insert(e.end(), pe.begin(), pe.end());
        }
        return e;
    }
    Element multiply(const Element& a, const Element& b) const override {
        Element r;
        r.reserve(len_);
        for (size_t i = 0; i < parts_.size(); i++) {
            Element pa = slice(a, i), pb = slice(b, i);
            Element pr = parts_[i]->multiply(pa, pb);
            r.insert(r.end(), pr.begin(), pr.end());
        }
        return r;
    }
    Element inverse(const Element& a) const override {
        Element r;
        r.reserve(len_);
        for (size_t i = 0; i < parts_.size(); i++) {
            Element pr = parts_[i]->inverse(slice(a, i));
            r.insert(r.end(), pr.begin(), pr.end());
        }
        return r;
    }
    std::vector<Element> enumerate() const override {
        std::vector<Element> out{Element{}};
        for (const auto& p : parts_) {
            std::vector<Element> fac = p->enumerate();
            std::vector<Element> next;
            next.reserve(out.size() * fac.size());
            for (const auto& a : out)
                for (const auto& b : fac) {
                    Element e = a;
                    e.insert(e.end(), b.begin(), b.end());
                    next.push_back(e);
                }
            out = std::move(next);
        }
        return out;
    }
    size_t encoding_length() const override { return len_; }
    bool abelian() const override {
        for (const auto& p : parts_)
            if (!p->abelian()) return false;
        return true;
    }

  private:
    Element slice(const Element& e, size_t i) const {
        size_t off = offsets_[i], n = parts_[i]->encoding_length();
        return Element(e.begin() + static_cast<long>(off),
                       e.begin() + static_cast<long>(off + n));
    }
    std::vector<std::shared_ptr<const GroupOps>> parts_;
    std::vector<size_t> offsets_;
    size_t len_ = 0;
};

std::shared_ptr<const GroupOps> make_ops(const GroupSpec& spec) {
    switch (spec.family) {
        case Family::cyclic: return std::make_shared<CyclicOps>(spec.params[0]);
        case Family::abelian_product: return std::make_shared<AbelianProductOps>(spec.params);
        case Family::dihedral: return std::make_shared<DihedralOps>(spec.params[0]);
        case Family::symmetric: return std::make_shared<SymmetricOps>(spec.params[0]);
        case Family::alternating: return std::make_shared<AlternatingOps>(spec.params[0]);
        case Family::quaternion_generalized: return std::make_shared<DicyclicOps>(spec.params[0]);
        case Family::heisenberg_mod_p: return std::make_shared<HeisenbergOps>(spec.params[0]);
        case Family::GL2q: return std::make_shared<Matrix2Ops>(spec.params[0], false);
        case Family::SL2q: return std::make_shared<Matrix2Ops>(spec.params[0], true);
        case Family::direct_product: {
            std::vector<std::shared_ptr<const GroupOps>> parts;
            for (const auto& f : spec.factors) parts.push_back(make_ops(f));
            return std::make_shared<DirectProductOps>(std::move(parts));
        }
    }
    throw InvalidSpec("bad family");
}

constexpr long kCayleyTableCap = 2048;

}  // namespace

// ---------------------------------------------------------------------------
// Group

Group::Group(GroupSpec spec, long cap) : spec_(std::move(spec)) {
    spec_.validate();
    long projected = spec_.projected_order();
    if (projected > cap)
        throw OrderCapExceeded("group order " + std::to_string(projected) +
                               " exceeds cap " + std::to_string(cap));
    ops_ = make_ops(spec_);
    elements_ = ops_->enumerate();
    if (static_cast<long>(elements_.size()) != projected)
        throw InvalidSpec("enumeration produced " + std::to_string(elements_.size()) +
                          " elements, expected " + std::to_string(projected));
    index_.reserve(elements_.size() * 2);
    for (size_t i = 0; i < elements_.size(); i++) {
        if (!index_.emplace(elements_[i], static_cast<int>(i)).second)
            throw InvalidSpec("duplicate element encoding in enumeration");
    }
    identity_ = index_.at(ops_->identity());
    abelian_ = ops_->abelian();
    fingerprint_ = spec_.render();

    long n = order();
    inverse_.resize(static_cast<size_t>(n));
    for (long i = 0; i < n; i++)
        inverse_[static_cast<size_t>(i)] = index_.at(ops_->inverse(elements_[static_cast<size_t>(i)]));
    if (n <= kCayleyTableCap) {
        cayley_.resize(static_cast<size_t>(n) * static_cast<size_t>(n));
        for (long i = 0; i < n; i++)
            for (long j = 0; j < n; j++)
                cayley_[static_cast<size_t>(i * n + j)] = static_cast<int32_t>(
                    index_.at(ops_->multiply(elements_[static_cast<size_t>(i)],
                                             elements_[static_cast<size_t>(j)])));
    }
}

int Group::index_of(const Element& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) throw InvalidSpec("element not in group");
    return it->second;
}

Element Group::multiply(const Element& a, const Element& b) const {
    return ops_->multiply(a, b);
}

Element Group::inverse(const Element& a) const { return ops_->inverse(a); }

int Group::mul(int i, int j) const {
    if (!cayley_.empty())
        return cayley_[static_cast<size_t>(i) * static_cast<size_t>(order()) +
                       static_cast<size_t>(j)];
    return index_.at(ops_->multiply(elements_[static_cast<size_t>(i)],
                                    elements_[static_cast<size_t>(j)]));
}

Group build_group(const GroupSpec& spec, long cap) { return Group(spec, cap); }

// ---------------------------------------------------------------------------
// Structural subroutines

bool Subgroup::contains(int idx) const {
    return std::binary_search(elements.begin(), elements.end(), idx);
}

Subgroup generate_subgroup(const Group& g, const std::vector<int>& generators) {
    std::vector<char> in(static_cast<size_t>(g.order()), 0);
    std::deque<int> frontier;
    auto push = [&](int i) {
        if (!in[static_cast<size_t>(i)]) {
            in[static_cast<size_t>(i)] = 1;
            frontier.push_back(i);
        }
    };
    push(g.identity_index());
    for (int i : generators) {
        if (i < 0 || i >= g.order()) throw InvalidSpec("generator index out of range");
        push(i);
        push(g.inv(i));
    }
    std::vector<int> members;
    while (!frontier.empty()) {
        int a = frontier.front();
        frontier.pop_front();
        members.push_back(a);
        for (int b : members) {
            push(g.mul(a, b));
            push(g.mul(b, a));
        }
    }
    std::sort(members.begin(), members.end());
    return Subgroup{&g, std::move(members)};
}

ConjugacyClasses conjugacy_classes(const Group& g) {
    long n = g.order();
    ConjugacyClasses cc;
    cc.class_of.assign(static_cast<size_t>(n), -1);
    if (g.is_abelian()) {
        // identity class first, then the rest in element order
        auto add_single = [&](int e) {
            cc.class_of[static_cast<size_t>(e)] = static_cast<int>(cc.classes.size());
            cc.representatives.push_back(e);
            cc.classes.push_back({e});
        };
        add_single(g.identity_index());
        for (int e = 0; e < n; e++)
            if (e != g.identity_index()) add_single(e);
        return cc;
    }
    auto orbit_of = [&](int e) {
        std::vector<int> orbit;
        for (int h = 0; h < n; h++) {
            int c = g.mul(g.mul(h, e), g.inv(h));
            if (cc.class_of[static_cast<size_t>(c)] == -1) {
                cc.class_of[static_cast<size_t>(c)] = static_cast<int>(cc.classes.size());
                orbit.push_back(c);
            }
        }
        std::sort(orbit.begin(), orbit.end());
        cc.representatives.push_back(e);
        cc.classes.push_back(std::move(orbit));
    };
    orbit_of(g.identity_index());
    for (int e = 0; e < n; e++)
        if (cc.class_of[static_cast<size_t>(e)] == -1) orbit_of(e);
    return cc;
}

Subgroup center(const Group& g) {
    long n = g.order();
    std::vector<int> z;
    for (int a = 0; a < n; a++) {
        bool central = true;
        for (int b = 0; b < n && central; b++)
            if (g.mul(a, b) != g.mul(b, a)) central = false;
        if (central) z.push_back(a);
    }
    return Subgroup{&g, std::move(z)};
}

Subgroup normalizer(const Group& g, const std::vector<int>& x) {
    if (x.empty()) throw InvalidSpec("normalizer of empty set");
    long n = g.order();
    std::vector<char> in_x(static_cast<size_t>(n), 0);
    for (int e : x) in_x[static_cast<size_t>(e)] = 1;
    std::vector<int> result;
    for (int a = 0; a < n; a++) {
        int ai = g.inv(a);
        bool normalizes = true;
        for (int e : x) {
            int c = g.mul(g.mul(a, e), ai);
            if (!in_x[static_cast<size_t>(c)]) {
                normalizes = false;
                break;
            }
        }
        if (normalizes) result.push_back(a);
    }
    return Subgroup{&g, std::move(result)};
}

std::vector<Subgroup> enumerate_subgroups(const Group& g, long cap) {
    if (g.order() > cap)
        throw OrderCapExceeded("subgroup enumeration needs |G| <= " + std::to_string(cap) +
                               ", got " + std::to_string(g.order()));
    std::set<std::vector<int>> seen;
    std::deque<std::vector<int>> work;
    auto add = [&](Subgroup s) {
        if (seen.insert(s.elements).second) work.push_back(s.elements);
    };
    add(Subgroup{&g, {g.identity_index()}});
    std::vector<std::vector<int>> cyclic;
    for (int e = 0; e < g.order(); e++) {
        Subgroup c = generate_subgroup(g, {e});
        cyclic.push_back(c.elements);
        add(std::move(c));
    }
    // extend each known subgroup by each cyclic generator until fixpoint
    while (!work.empty()) {
        std::vector<int> base = std::move(work.front());
        work.pop_front();
        for (int e = 0; e < g.order(); e++) {
            if (std::binary_search(base.begin(), base.end(), e)) continue;
            std::vector<int> gens = base;
            gens.push_back(e);
            add(generate_subgroup(g, gens));
        }
    }
    std::vector<Subgroup> out;
    for (const auto& s : seen) out.push_back(Subgroup{&g, s});
    std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
        if (a.elements.size() != b.elements.size())
            return a.elements.size() < b.elements.size();
        return a.elements < b.elements;
    });
    return out;
}

}  // namespace gtmm
