#include "gtmm/bounds.hpp"

#include <array>
#include <cmath>

namespace gtmm {

namespace {

// ln sum_i d_i^alpha with compensated summation in long double.
double log_sum_powers(const DegreeMultiset& dm, double alpha) {
    long double sum = 0.0L, comp = 0.0L;
    for (long d : dm.degrees) {
        long double term = powl(static_cast<long double>(d), static_cast<long double>(alpha));
        long double y = term - comp;
        long double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return static_cast<double>(logl(sum));
}

}  // namespace

BoundReport omega_upper_bound(long stu, const DegreeMultiset& degrees) {
    if (stu < 1) throw InconsistentInput("stu must be >= 1");
    unsigned __int128 lhs = static_cast<unsigned __int128>(stu) *
                            static_cast<unsigned __int128>(stu);
    unsigned __int128 rhs = static_cast<unsigned __int128>(degrees.group_order);
    rhs = rhs * degrees.group_order * degrees.group_order;
    if (lhs > rhs)
        throw InconsistentInput("stu exceeds |G|^(3/2), impossible for a TPP triple");
    return omega_upper_bound_real(static_cast<double>(stu), degrees);
}

BoundReport omega_upper_bound_real(double stu, const DegreeMultiset& degrees) {
    if (!(stu >= 1.0)) throw InconsistentInput("stu must be >= 1");
    double order = static_cast<double>(degrees.group_order);
    if (stu > std::pow(order, 1.5) * (1.0 + 1e-12))
        throw InconsistentInput("stu exceeds |G|^(3/2), impossible for a TPP triple");

    BoundReport r;
    r.stu = std::lround(stu);
    r.degrees = degrees;
    double log_stu = std::log(stu);
    auto phi = [&](double alpha) {
        return alpha / 3.0 * log_stu - log_sum_powers(degrees, alpha);
    };
    if (phi(3.0) <= 0.0) {
        r.vacuous = true;
        r.omega_bound = 3.0;
        return r;
    }
    if (phi(2.0) >= 0.0) {
        // smaller root lies below 2; omega >= 2 externally
        r.clamped = true;
        r.omega_bound = 2.0;
        return r;
    }
    double lo = 2.0, hi = 3.0;  // phi(lo) < 0 <= phi(hi)
    while (hi - lo > 1e-9) {
        double mid = 0.5 * (lo + hi);
        if (phi(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    r.omega_bound = 0.5 * (lo + hi);
    return r;
}

double gowers_barrier(long order, long n_g) {
    if (n_g < 2) throw AbelianGroupError("gowers barrier needs n(G) >= 2");
    double o = static_cast<double>(order);
    return std::pow(o, 1.5) / std::sqrt(static_cast<double>(n_g)) + o;
}

double normalizer_barrier(const Group& g, const Subgroup& h1, const Subgroup& h2,
                          const Subgroup& h3) {
    double s = 1.0;
    for (const Subgroup* h : {&h1, &h2, &h3}) {
        Subgroup nrm = normalizer(g, h->elements);
        s *= static_cast<double>(nrm.order()) / static_cast<double>(h->order());
    }
    return std::pow(static_cast<double>(g.order()), 1.5) / std::pow(s, 0.25);
}

double subset_normalizer_barrier(const Group& g, const std::vector<int>& s,
                                 const std::vector<int>& t, const std::vector<int>& u) {
    auto cap_size = [&](const std::vector<int>& x, const std::vector<int>& y) {
        Subgroup nrm = normalizer(g, quotient_set(g, x));
        long c = 0;
        for (int e : y)
            if (nrm.contains(e)) c++;
        return c;
    };
    long a = cap_size(s, t), b = cap_size(t, u), c = cap_size(u, s);
    double o = static_cast<double>(g.order());
    return std::sqrt(o * o * o / (static_cast<double>(a) * static_cast<double>(b) *
                                  static_cast<double>(c)));
}

double center_barrier(const Group& g) {
    Subgroup z = center(g);
    return std::pow(static_cast<double>(g.order()), 1.5) /
           std::sqrt(static_cast<double>(z.order()));
}

BarrierReport barrier_report(const Group& g,
                             const std::optional<std::array<Subgroup, 3>>& triple) {
    BarrierReport r;
    r.group_order = g.order();
    double o = static_cast<double>(g.order());
    r.sqrt2_value = std::pow(o, 1.5) / std::sqrt(2.0) + o;
    r.center_value = center_barrier(g);
    if (!g.is_abelian()) {
        r.n_g = n_of_g(g);
        r.gowers_value = gowers_barrier(g.order(), *r.n_g);
    }
    if (triple) {
        r.normalizer_value = normalizer_barrier(g, (*triple)[0], (*triple)[1], (*triple)[2]);
        r.subset_normalizer_value = subset_normalizer_barrier(
            g, (*triple)[0].elements, (*triple)[1].elements, (*triple)[2].elements);
        long p = (*triple)[0].order() * (*triple)[1].order() * (*triple)[2].order();
        r.observed_max_product = p;
    }
    return r;
}

}  // namespace gtmm
