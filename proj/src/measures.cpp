#include "subtile/measures.hpp"

#include <cmath>

#include "subtile/errors.hpp"

namespace subtile {

namespace {

bool integral_entries(const std::vector<double>& v) {
    for (double x : v)
        if (std::abs(x - std::round(x)) > 1e-12) return false;
    return true;
}

// (S^t)^k v by repeated application.
std::vector<double> power_t(const IMat& S, std::vector<double> v, int k) {
    for (int i = 0; i < k; ++i) v = mat_t_vec(S, v);
    return v;
}

}  // namespace

PhiVector phi_vector(const Substitution& sub, std::vector<double> v, std::string label,
                     std::optional<double> theta) {
    PhiVector pv;
    pv.v = std::move(v);
    pv.label = std::move(label);
    if (theta) {
        std::vector<double> w = mat_t_vec(sub.incidence, pv.v);
        double num = 0, den = 0;
        for (size_t i = 0; i < pv.v.size(); ++i) {
            double r = w[i] - *theta * pv.v[i];
            num += r * r;
            den += pv.v[i] * pv.v[i];
        }
        if (std::sqrt(num) > 1e-9 * std::sqrt(den))
            throw Error("phi_vector: not an eigenvector for the given eigenvalue");
        pv.theta = *theta;
        pv.is_eigen = true;
    }
    if (integral_entries(pv.v)) {
        std::vector<long long> e(pv.v.size());
        for (size_t i = 0; i < pv.v.size(); ++i) e[i] = std::llround(pv.v[i]);
        pv.exact = std::move(e);
    }
    return pv;
}

PhiVector phi_from_left(const SpectralData& sd, int n) {
    if (n < 0 || n >= static_cast<int>(sd.left.size()) || sd.left[n].empty())
        throw Error("left eigenvector " + std::to_string(n + 1) + " unavailable");
    PhiVector pv;
    pv.v = sd.left[n];
    pv.label = "u" + std::to_string(n + 1);
    pv.theta = sd.eigenvalues[n];
    pv.is_eigen = true;
    if (integral_entries(pv.v)) {
        std::vector<long long> e(pv.v.size());
        for (size_t i = 0; i < pv.v.size(); ++i) e[i] = std::llround(pv.v[i]);
        pv.exact = std::move(e);
    }
    return pv;
}

double phi_plus_supertile(const Substitution& sub, const PhiVector& v, int k, int type) {
    if (k < 0) throw Error("supertile order must be >= 0");
    if (v.exact) return static_cast<double>(phi_plus_supertile_exact(sub, *v.exact, k, type));
    return power_t(sub.incidence, v.v, k)[type];
}

long long phi_plus_supertile_exact(const Substitution& sub, const std::vector<long long>& v,
                                   int k, int type) {
    std::vector<long long> w = v;
    for (int i = 0; i < k; ++i) w = mat_t_vec(sub.incidence, w);
    return w[type];
}

double phi_plus_ball(const PhiVector& v, const Window& window, const BallDecomposition& dec) {
    const Substitution& sub = window.sub();
    // Per-level values (S^t)^k v, computed once.
    std::vector<std::vector<double>> levels(window.levels() + 1);
    levels[0] = v.v;
    for (int k = 1; k <= window.levels(); ++k) levels[k] = mat_t_vec(sub.incidence, levels[k - 1]);

    double total = 0;
    for (const BallPiece& p : dec.pieces) total += levels[p.level][p.type];
    for (const BoundaryCell& b : dec.boundary) total += v.v[b.type] * b.fraction;
    return total;
}

double phi_plus_ball(const PhiVector& v, const Window& window, double R) {
    return phi_plus_ball(v, window, ball_decomposition(window, R));
}

double m_phi_minus(const CylindricalFunction& f, const std::vector<double>& v) {
    double s = 0;
    for (int i = 0; i < f.num_types(); ++i) s += v[i] * f.integral(i);
    return s;
}

SelfSimilarityReport self_similarity_supertiles(const Substitution& sub,
                                                const std::vector<long long>& v, long long theta,
                                                const SupertileDomain& domain) {
    long long lhs = 0, rhs = 0;
    for (const Supertile& st : domain.parts) {
        long long base = phi_plus_supertile_exact(sub, v, st.level, st.type);
        lhs += phi_plus_supertile_exact(sub, v, st.level + 1, st.type);
        rhs += theta * base;
    }
    SelfSimilarityReport rep;
    rep.exact_arithmetic = true;
    rep.lhs = static_cast<double>(lhs);
    rep.rhs = static_cast<double>(rhs);
    rep.rel_error = lhs == rhs ? 0.0
                               : std::abs(rep.lhs - rep.rhs) /
                                     std::max(1.0, std::max(std::abs(rep.lhs), std::abs(rep.rhs)));
    return rep;
}

SelfSimilarityReport self_similarity_ball(const PhiVector& v, const Window& window, double R) {
    if (!v.is_eigen) throw Error("self-similarity requires an eigenvector weight");
    const Substitution& sub = window.sub();
    double lam = sub.lambda;

    Window expanded = make_window(window.sub_ptr(), window.root_type(), window.levels() + 1);
    Vec2 a = window.anchor();
    expanded = expanded.with_anchor(Vec2{lam * a[0], sub.dim == 2 ? lam * a[1] : 0.0});

    SelfSimilarityReport rep;
    rep.exact_arithmetic = false;
    rep.lhs = phi_plus_ball(v, expanded, lam * R);
    rep.rhs = v.theta * phi_plus_ball(v, window, R);
    rep.rel_error = std::abs(rep.lhs - rep.rhs) /
                    std::max(1e-12, std::max(std::abs(rep.lhs), std::abs(rep.rhs)));
    return rep;
}

}  // namespace subtile
