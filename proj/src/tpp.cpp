#include "gtmm/tpp.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace gtmm {

namespace {

void require_nonempty(const std::vector<int>& x, const char* name) {
    if (x.empty()) throw InvalidSpec(std::string(name) + " must be nonempty");
}

std::vector<char> membership(const Group& g, const std::vector<int>& x) {
    std::vector<char> in(static_cast<size_t>(g.order()), 0);
    for (int e : x) in[static_cast<size_t>(e)] = 1;
    return in;
}

}  // namespace

std::vector<int> quotient_set(const Group& g, const std::vector<int>& x) {
    require_nonempty(x, "X");
    std::vector<char> in(static_cast<size_t>(g.order()), 0);
    for (int a : x)
        for (int b : x) in[static_cast<size_t>(g.mul(a, g.inv(b)))] = 1;
    std::vector<int> out;
    for (int e = 0; e < g.order(); e++)
        if (in[static_cast<size_t>(e)]) out.push_back(e);
    return out;
}

bool check_tpp(const Group& g, const std::vector<int>& s, const std::vector<int>& t,
               const std::vector<int>& u) {
    require_nonempty(s, "S");
    require_nonempty(t, "T");
    require_nonempty(u, "U");
    std::vector<int> qs = quotient_set(g, s);
    std::vector<int> qt = quotient_set(g, t);
    std::vector<int> qu = quotient_set(g, u);
    std::vector<char> in_qu = membership(g, qu);
    int e = g.identity_index();
    for (int a : qs)
        for (int b : qt) {
            if (a == e && b == e) continue;
            int w = g.inv(g.mul(a, b));  // the unique u with a*b*u = 1
            if (in_qu[static_cast<size_t>(w)]) return false;
        }
    return true;
}

bool check_ktpp(const Group& g, const Subgroup& h1, const Subgroup& h2,
                const Subgroup& h3, const Subgroup& k) {
    std::vector<char> in_h3 = membership(g, h3.elements);
    std::vector<char> in_k = membership(g, k.elements);
    for (int a : h1.elements)
        for (int b : h2.elements) {
            int c = g.inv(g.mul(a, b));  // h1 h2 c = 1
            if (in_h3[static_cast<size_t>(c)] &&
                !(in_k[static_cast<size_t>(a)] && in_k[static_cast<size_t>(b)] &&
                  in_k[static_cast<size_t>(c)]))
                return false;
        }
    return true;
}

double packing_ratio(long s, long t, long u, long order) {
    return std::log(static_cast<double>(s) * static_cast<double>(t) *
                    static_cast<double>(u)) /
           std::log(static_cast<double>(order));
}

double TppTriple::ratio() const {
    return packing_ratio(static_cast<long>(s.size()), static_cast<long>(t.size()),
                         static_cast<long>(u.size()), parent->order());
}

std::vector<TppTriple> search_subgroup_triples(const Group& g, const SearchConfig&) {
    std::vector<Subgroup> subs = enumerate_subgroups(g);
    size_t n = subs.size();
    long order = g.order();

    // precompute quotient sets once (Q(H) = H, but check_tpp recomputes them;
    // here we call the two-loop core directly on the subgroup element sets)
    std::vector<std::vector<char>> member(n);
    for (size_t i = 0; i < n; i++) member[i] = membership(g, subs[i].elements);

    int e = g.identity_index();
    auto subgroup_tpp = [&](size_t i, size_t j, size_t k) {
        for (int a : subs[i].elements)
            for (int b : subs[j].elements) {
                if (a == e && b == e) continue;
                int w = g.inv(g.mul(a, b));
                if (member[k][static_cast<size_t>(w)]) return false;
            }
        return true;
    };

    std::vector<TppTriple> out;
    for (size_t i = 0; i < n; i++) {
        long oi = subs[i].order();
        for (size_t j = 0; j < n; j++) {
            long oj = subs[j].order();
            if (oi * oj > order) continue;  // pairwise injectivity is necessary
            for (size_t k = 0; k < n; k++) {
                long ok = subs[k].order();
                if (oi * ok > order || oj * ok > order) continue;
                if (!subgroup_tpp(i, j, k)) continue;
                TppTriple t;
                t.parent = &g;
                t.s = subs[i].elements;
                t.t = subs[j].elements;
                t.u = subs[k].elements;
                t.subgroups = true;
                t.verdict = true;
                out.push_back(std::move(t));
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const TppTriple& a, const TppTriple& b) {
        if (a.product() != b.product()) return a.product() > b.product();
        if (a.s != b.s) return a.s < b.s;
        if (a.t != b.t) return a.t < b.t;
        return a.u < b.u;
    });
    return out;
}

TppTriple search_subsets_anneal(const Group& g, const SearchConfig& cfg) {
    if (cfg.budget <= 0) throw InvalidSpec("anneal budget must be > 0");
    std::mt19937_64 rng(cfg.seed);
    long order = g.order();
    int e = g.identity_index();

    std::vector<std::vector<int>> cur = {{e}, {e}, {e}};
    std::vector<std::vector<int>> best = cur;
    long best_product = 1;
    double temp = cfg.temperature;

    auto product_of = [](const std::vector<std::vector<int>>& sets) {
        return static_cast<long>(sets[0].size()) * static_cast<long>(sets[1].size()) *
               static_cast<long>(sets[2].size());
    };

    // independent restarts; basins around distinct maximal triples are hard to
    // exit by local moves alone
    long restart_every = std::max(cfg.budget / 10, 500L);
    for (long move = 0; move < cfg.budget; move++, temp *= cfg.cooling) {
        if (move > 0 && move % restart_every == 0) {
            cur = {{e}, {e}, {e}};
            temp = cfg.temperature;
        }
        if (temp < 1e-3) temp = cfg.temperature;  // reheat to escape plateaus
        std::vector<std::vector<int>> cand = cur;
        std::vector<int>& set = cand[rng() % 3];
        int op = static_cast<int>(rng() % 3);  // 0 add, 1 remove, 2 swap
        if (op == 0) {
            // scan from a random offset for the first element that keeps the
            // triple valid; pushes the state toward maximal triples
            long start = static_cast<long>(rng() % static_cast<uint64_t>(order));
            bool added = false;
            for (long d = 0; d < order && !added; d++) {
                int x = static_cast<int>((start + d) % order);
                if (std::binary_search(set.begin(), set.end(), x)) continue;
                set.insert(std::lower_bound(set.begin(), set.end(), x), x);
                if (check_tpp(g, cand[0], cand[1], cand[2]))
                    added = true;
                else
                    set.erase(std::lower_bound(set.begin(), set.end(), x));
            }
            if (!added) continue;
            cur = cand;
            if (product_of(cur) > best_product) {
                best_product = product_of(cur);
                best = cur;
            }
            continue;
        }
        if (op == 2 && static_cast<long>(set.size()) < order) {
            int x = static_cast<int>(rng() % static_cast<uint64_t>(order));
            if (std::binary_search(set.begin(), set.end(), x)) continue;
            if (set.size() > 1)
                set.erase(set.begin() + static_cast<long>(rng() % set.size()));
            set.insert(std::lower_bound(set.begin(), set.end(), x), x);
        } else {
            if (set.size() <= 1) continue;
            set.erase(set.begin() + static_cast<long>(rng() % set.size()));
        }
        long cur_product = product_of(cur);
        long cand_product = product_of(cand);
        if (cand_product < cur_product) {
            double accept = std::exp((std::log(static_cast<double>(cand_product)) -
                                      std::log(static_cast<double>(cur_product))) /
                                     std::max(temp, 1e-9));
            if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) >= accept) continue;
        }
        if (!check_tpp(g, cand[0], cand[1], cand[2])) continue;
        cur = cand;
        if (cand_product > best_product) {
            best_product = cand_product;
            best = cand;
        }
    }

    TppTriple t;
    t.parent = &g;
    t.s = best[0];
    t.t = best[1];
    t.u = best[2];
    t.subgroups = false;
    t.verdict = true;
    return t;
}

}  // namespace gtmm
