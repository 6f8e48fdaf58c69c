#pragma once

#include <optional>
#include <string>
#include <vector>

#include "subtile/ball.hpp"
#include "subtile/cylindrical.hpp"
#include "subtile/spectral_data.hpp"
#include "subtile/window.hpp"

namespace subtile {

// Weight vector of a finitely-additive measure Phi^+_v. The measure assigns
// ((S^t)^k v)_j to an order-k supertile of type j; when v is an eigenvector
// of S^t this is theta^k v_j. An exact int64 copy is kept when all entries
// are integers.
struct PhiVector {
    std::vector<double> v;
    std::string label;
    double theta = 0.0;
    bool is_eigen = false;
    std::optional<std::vector<long long>> exact;
};

// Wraps a raw vector; if an eigenvalue is supplied the eigenvector residual
// ||S^t v - theta v|| <= 1e-9 ||v|| is enforced.
PhiVector phi_vector(const Substitution& sub, std::vector<double> v, std::string label,
                     std::optional<double> theta = std::nullopt);

// The n-th biorthonormal left vector l_n as a PhiVector.
PhiVector phi_from_left(const SpectralData& sd, int n);

// ((S^t)^k v)_j.
double phi_plus_supertile(const Substitution& sub, const PhiVector& v, int k, int type);
long long phi_plus_supertile_exact(const Substitution& sub, const std::vector<long long>& v,
                                   int k, int type);

// Same value, viewed as the measure of the exact supertile support (the
// box-domain counterpart of phi_plus_ball).
inline double phi_plus_box(const Substitution& sub, const PhiVector& v, int k, int type) {
    return phi_plus_supertile(sub, v, k, type);
}

// Measure of the ball around the window anchor: full supertile pieces
// contribute ((S^t)^k v)_j, straddling tiles contribute v_j times their
// clipped volume fraction.
double phi_plus_ball(const PhiVector& v, const Window& window, double R);
double phi_plus_ball(const PhiVector& v, const Window& window, const BallDecomposition& dec);

// m_{Phi_v^-}(f) = sum_i v_i * integral(Psi_i).
double m_phi_minus(const CylindricalFunction& f, const std::vector<double>& v);

// Self-similarity: Phi^+_v(phi(Omega)) = theta * Phi^+_v(Omega).
struct SupertileDomain {
    std::vector<Supertile> parts;  // pairwise disjoint supports
};

struct SelfSimilarityReport {
    bool exact_arithmetic = false;
    double lhs = 0.0;   // measure of the expanded domain, one hierarchy level up
    double rhs = 0.0;   // theta times the measure of the original domain
    double rel_error = 0.0;
};

// Exact case: the domain is a union of supertile supports and v integral.
// Equality holds in int64 arithmetic; rel_error is 0 on success.
SelfSimilarityReport self_similarity_supertiles(const Substitution& sub,
                                                const std::vector<long long>& v, long long theta,
                                                const SupertileDomain& domain);

// Ball case: compares Phi^+ on B(lambda * anchor, lambda * R) inside the
// once-substituted window against theta * Phi^+ on B(anchor, R).
SelfSimilarityReport self_similarity_ball(const PhiVector& v, const Window& window, double R);

}  // namespace subtile
