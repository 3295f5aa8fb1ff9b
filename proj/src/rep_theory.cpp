#include "gtmm/rep_theory.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <random>

namespace gtmm {

ClassData class_structure_constants(const Group& g) {
    ConjugacyClasses cc = conjugacy_classes(g);
    size_t k = cc.count();
    ClassData cd;
    cd.group_order = g.order();
    cd.representatives = cc.representatives;
    for (const auto& cls : cc.classes) cd.class_sizes.push_back(static_cast<long>(cls.size()));
    cd.a.assign(k, std::vector<std::vector<long>>(k, std::vector<long>(k, 0)));
    for (size_t j = 0; j < k; j++) {
        int y = cc.representatives[j];
        for (size_t i = 0; i < k; i++)
            for (int x : cc.classes[i]) {
                int prod = g.mul(x, y);
                cd.a[i][j][static_cast<size_t>(cc.class_of[static_cast<size_t>(prod)])]++;
            }
    }
    return cd;
}

namespace {

// Central characters are the common eigenvectors of the matrices
// (A_i)_{jk} = N_ijk, where N_ijk is the number of pairs in C_i x C_j whose
// product equals a fixed representative of C_k. A generic integer combination
// of the A_i has simple spectrum since distinct irreducible characters have
// distinct central character vectors.
std::vector<long> degrees_from_class_data(const ClassData& cd, uint64_t seed) {
    size_t k = cd.a.size();
    long order = cd.group_order;
    std::vector<Eigen::MatrixXd> A(k, Eigen::MatrixXd::Zero(static_cast<long>(k),
                                                            static_cast<long>(k)));
    for (size_t i = 0; i < k; i++)
        for (size_t j = 0; j < k; j++)
            for (size_t l = 0; l < k; l++) {
                // N_ijl = a[i][j][l] * |C_j| / |C_l|
                long num = cd.a[i][j][l] * cd.class_sizes[j];
                if (num % cd.class_sizes[l] != 0)
                    throw DegreeValidationFailed("non-integer structure constant");
                A[i](static_cast<long>(j), static_cast<long>(l)) =
                    static_cast<double>(num / cd.class_sizes[l]);
            }

    // real coefficients keep accidental eigenvalue collisions (distinct
    // characters sharing a combined eigenvalue) measure-zero
    std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ull + 0xda3e39cb94b95bdbull);
    std::uniform_real_distribution<double> coeff(1.0, 2.0);
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(static_cast<long>(k), static_cast<long>(k));
    for (size_t i = 0; i < k; i++) M += coeff(rng) * A[i];

    Eigen::EigenSolver<Eigen::MatrixXd> es(M);
    if (es.info() != Eigen::Success)
        throw DegreeValidationFailed("eigen decomposition failed");

    std::vector<long> degrees;
    for (long c = 0; c < static_cast<long>(k); c++) {
        Eigen::VectorXcd v = es.eigenvectors().col(c);
        double vn = v.squaredNorm();
        // central character value on each class via Rayleigh quotients
        long double inv_sum = 0.0L;  // sum_j |omega_j|^2 / |C_j|
        for (size_t i = 0; i < k; i++) {
            std::complex<double> w = v.dot(A[i] * v) / vn;  // v^H A_i v / v^H v
            inv_sum += static_cast<long double>(std::norm(w)) /
                       static_cast<long double>(cd.class_sizes[i]);
        }
        if (inv_sum <= 0.0L) throw DegreeValidationFailed("nonpositive character norm");
        double d = std::sqrt(static_cast<double>(static_cast<long double>(order) / inv_sum));
        double rounded = std::round(d);
        if (std::abs(d - rounded) > 1e-6 || rounded < 1.0)
            throw DegreeValidationFailed("degree " + std::to_string(d) +
                                         " deviates from an integer");
        degrees.push_back(static_cast<long>(rounded));
    }
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

void validate_degrees(const std::vector<long>& degrees, long order, size_t class_count) {
    if (degrees.size() != class_count)
        throw DegreeValidationFailed("degree count != class count");
    long sum_sq = 0;
    for (long d : degrees) {
        if (d < 1 || order % d != 0)
            throw DegreeValidationFailed("degree " + std::to_string(d) +
                                         " does not divide group order");
        sum_sq += d * d;
    }
    if (sum_sq != order)
        throw DegreeValidationFailed("sum of squared degrees " + std::to_string(sum_sq) +
                                     " != group order " + std::to_string(order));
}

std::mutex g_cache_mutex;
std::map<std::string, DegreeMultiset> g_cache;

}  // namespace

DegreeMultiset irrep_degrees(const Group& g) {
    {
        std::lock_guard<std::mutex> lk(g_cache_mutex);
        auto it = g_cache.find(g.fingerprint());
        if (it != g_cache.end()) return it->second;
    }

    DegreeMultiset dm;
    dm.group_order = g.order();
    if (g.is_abelian()) {
        dm.degrees.assign(static_cast<size_t>(g.order()), 1);
    } else {
        ClassData cd = class_structure_constants(g);
        // retry with fresh combination coefficients if a near-degenerate
        // combination spoils the eigenvectors
        const uint64_t base_seed = 0x5eed0001;
        std::string last_error;
        bool ok = false;
        for (int attempt = 0; attempt < 5 && !ok; attempt++) {
            try {
                dm.degrees = degrees_from_class_data(cd, base_seed + static_cast<uint64_t>(attempt));
                validate_degrees(dm.degrees, dm.group_order, cd.a.size());
                ok = true;
            } catch (const DegreeValidationFailed& e) {
                last_error = e.what();
            }
        }
        if (!ok) throw DegreeValidationFailed(last_error);
    }

    std::lock_guard<std::mutex> lk(g_cache_mutex);
    g_cache.emplace(g.fingerprint(), dm);
    return dm;
}

long n_of_g(const Group& g) {
    if (g.is_abelian())
        throw AbelianGroupError("n(G) is undefined for abelian groups");
    DegreeMultiset dm = irrep_degrees(g);
    for (long d : dm.degrees)
        if (d > 1) return d;
    throw AbelianGroupError("all degrees equal 1");  // unreachable for nonabelian G
}

double sum_degree_powers(const DegreeMultiset& dm, double alpha) {
    long double sum = 0.0L;
    for (long d : dm.degrees)
        sum += powl(static_cast<long double>(d), static_cast<long double>(alpha));
    return static_cast<double>(sum);
}

}  // namespace gtmm
