#include "subtile/spectral_data.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "subtile/errors.hpp"

namespace subtile {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct EigPair {
    std::complex<double> value;
    Eigen::VectorXcd right;  // of S
    Eigen::VectorXcd left;   // of S^t
};

// Evaluate the (integer) characteristic polynomial at x, together with a
// magnitude scale for the relative residual.
std::pair<double, double> poly_eval(const std::vector<long long>& c, double x) {
    double v = 0, scale = 0, p = 1;
    for (size_t k = 0; k < c.size(); ++k) {
        v += static_cast<double>(c[k]) * p;
        scale += std::abs(static_cast<double>(c[k])) * std::abs(p);
        p *= x;
    }
    return {v, std::max(scale, 1.0)};
}

}  // namespace

SpectralData spectral_data(const Substitution& sub) {
    const IMat& S = sub.incidence;
    const int m = S.n;
    if (!is_primitive(S)) throw NotPrimitive("spectral_data requires a primitive matrix");

    Eigen::MatrixXd M(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) M(i, j) = static_cast<double>(S.at(i, j));

    Eigen::EigenSolver<Eigen::MatrixXd> er(M);
    Eigen::EigenSolver<Eigen::MatrixXd> el(M.transpose());
    if (er.info() != Eigen::Success || el.info() != Eigen::Success)
        throw Error("eigendecomposition failed");

    // Match left eigenvectors to right ones by eigenvalue.
    std::vector<EigPair> pairs(m);
    std::vector<bool> used(m, false);
    for (int n = 0; n < m; ++n) {
        pairs[n].value = er.eigenvalues()(n);
        pairs[n].right = er.eigenvectors().col(n);
        int best = -1;
        double best_d = std::numeric_limits<double>::max();
        for (int k = 0; k < m; ++k) {
            if (used[k]) continue;
            double d = std::abs(el.eigenvalues()(k) - pairs[n].value);
            if (d < best_d) {
                best_d = d;
                best = k;
            }
        }
        used[best] = true;
        pairs[n].left = el.eigenvectors().col(best);
    }
    std::sort(pairs.begin(), pairs.end(), [](const EigPair& a, const EigPair& b) {
        if (std::abs(a.value) != std::abs(b.value)) return std::abs(a.value) > std::abs(b.value);
        return a.value.real() > b.value.real();
    });

    SpectralData sd;
    sd.S = S;
    sd.dim = sub.dim;
    sd.eigenvalues.resize(m);
    for (int n = 0; n < m; ++n) sd.eigenvalues[n] = pairs[n].value.real();

    const double t1 = pairs[0].value.real();
    const double tol = 1e-9 * std::max(1.0, t1);
    if (std::abs(pairs[0].value.imag()) > tol || t1 <= 1.0)
        throw DegenerateSpectrum("Perron eigenvalue not real > 1");
    if (m > 1 && std::abs(pairs[1].value) > t1 - tol)
        throw DegenerateSpectrum("Perron eigenvalue not strictly dominant");
    sd.theta1 = t1;
    sd.cutoff = std::pow(t1, (sub.dim - 1.0) / sub.dim);

    // The counting eigenvalue must agree with the geometric expansion.
    double want = std::pow(sub.lambda, sub.dim);
    if (std::abs(t1 - want) > 1e-9 * want)
        throw DegenerateSpectrum("theta1 != lambda^d: " + std::to_string(t1));

    // Cross-check roots against the exact characteristic polynomial while
    // the integer arithmetic stays comfortable.
    if (m <= 4) {
        std::vector<long long> cp = char_poly(S);
        for (int n = 0; n < m; ++n) {
            if (std::abs(pairs[n].value.imag()) > tol) continue;
            auto [v, scale] = poly_eval(cp, pairs[n].value.real());
            if (std::abs(v) > 1e-8 * scale)
                throw Error("characteristic polynomial cross-check failed");
        }
    }

    auto is_simple = [&](int n) {
        for (int k = 0; k < m; ++k)
            if (k != n && std::abs(pairs[k].value - pairs[n].value) < 1e-6 * std::max(1.0, t1))
                return false;
        return true;
    };
    auto is_real = [&](int n) { return std::abs(pairs[n].value.imag()) <= tol; };

    sd.right.assign(m, {});
    sd.left.assign(m, {});
    std::vector<double> vol(m);
    for (int t = 0; t < m; ++t) vol[t] = sub.volume(t);

    for (int n = 0; n < m; ++n) {
        if (!is_real(n) || !is_simple(n)) continue;
        Eigen::VectorXd r = pairs[n].right.real();
        Eigen::VectorXd l = pairs[n].left.real();
        // Deterministic sign: largest-magnitude component of r positive.
        int imax = 0;
        for (int i = 1; i < m; ++i)
            if (std::abs(r(i)) > std::abs(r(imax))) imax = i;
        if (r(imax) < 0) r = -r;
        double dot = l.dot(r);
        if (std::abs(dot) < 1e-9) continue;  // pathological pairing
        l /= dot;
        // Residual guards on both eigenvectors.
        double rr = (M * r - pairs[n].value.real() * r).norm();
        double rl = (M.transpose() * l - pairs[n].value.real() * l).norm();
        if (rr > 1e-9 * std::max(1.0, r.norm() * t1) || rl > 1e-9 * std::max(1.0, l.norm() * t1))
            throw Error("eigenvector residual too large");
        sd.right[n].assign(r.data(), r.data() + m);
        sd.left[n].assign(l.data(), l.data() + m);
    }

    if (sd.right[0].empty()) throw DegenerateSpectrum("missing Perron eigenvector");
    for (double v : sd.right[0])
        if (v <= 0) throw DegenerateSpectrum("Perron eigenvector not positive");

    sd.expanding_dims = 0;
    for (int n = 0; n < m; ++n) {
        double mod = std::abs(pairs[n].value);
        if (mod > sd.cutoff + tol) {
            ++sd.expanding_dims;
            if (!is_real(n) || !is_simple(n) || sd.right[n].empty())
                throw DegenerateSpectrum("expanding part not real simple diagonalizable");
        }
        if (std::abs(mod - sd.cutoff) <= tol) sd.jordan_s = 1;
    }

    if (m >= 2) {
        if (!is_real(1) || !is_simple(1))
            throw DegenerateSpectrum("theta2 complex or multiple");
        sd.theta2 = pairs[1].value.real();
        sd.hypothesis_ok = sd.theta2 > sd.cutoff + tol;
        sd.alpha = sd.theta2 > 0 ? sub.dim * std::log(sd.theta2) / std::log(sd.theta1) : kNaN;
    } else {
        sd.theta2 = kNaN;
        sd.alpha = kNaN;
        sd.hypothesis_ok = false;
    }
    return sd;
}

std::vector<double> tile_frequencies(const SpectralData& sd, const Substitution& sub) {
    const std::vector<double>& r1 = sd.right[0];
    double denom = 0;
    for (int t = 0; t < sub.num_types(); ++t) denom += r1[t] * sub.volume(t);
    std::vector<double> freq(sub.num_types());
    for (int t = 0; t < sub.num_types(); ++t) freq[t] = r1[t] / denom;
    return freq;
}

}  // namespace subtile
