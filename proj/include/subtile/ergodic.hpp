#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "subtile/ball.hpp"
#include "subtile/cylindrical.hpp"
#include "subtile/measures.hpp"
#include "subtile/spectral_data.hpp"

namespace subtile {

// Mean of f against the unique invariant measure: sum_i freq_i integral(Psi_i).
double integral_mu(const CylindricalFunction& f, const std::vector<double>& freq);

// Integral of the profile field over an order-k supertile of type j:
// sum_i (S^k)_{ij} integral(Psi_i), exact via matrix powers.
double supertile_integral(const Substitution& sub, const CylindricalFunction& f, int k, int type);

// S(f, T, rho): integral of the profile field over the ball of radius rho
// around the window anchor. Supertile pieces use matrix powers; straddling
// tiles are clipped subcell by subcell.
double ergodic_integral(const CylindricalFunction& f, const Window& window, double rho);
double ergodic_integral(const CylindricalFunction& f, const Window& window,
                        const BallDecomposition& dec);

// S(f,.,rho) - Leb(B_rho) * mean - sum over the rapidly expanding
// directions n >= 2 of Phi^+_{l_n}(B_rho) * m_{Phi^-}(f, r_n).
// Zero (up to rounding) on exact supertile supports when the expanding
// directions span the non-Perron part of the profile vector.
double deviation_residual(const CylindricalFunction& f, const Window& window, double rho,
                          const SpectralData& sd, const std::vector<double>& freq);
double deviation_residual(const CylindricalFunction& f, const Window& window,
                          const BallDecomposition& dec, const SpectralData& sd,
                          const std::vector<double>& freq);

// Box-domain variant on the exact support of an order-k supertile.
double deviation_residual_box(const Substitution& sub, const SpectralData& sd,
                              const std::vector<double>& freq, const CylindricalFunction& f,
                              int k, int type);

struct SeriesRow {
    int N = 0;          // radius exponent: R = lambda^N * R0
    double R = 0.0;
    double value = 0.0;  // mean over anchors (signed)
    double rms = 0.0;    // sqrt(mean of squares) over anchors
    double stderr_ = 0.0;
    int anchors = 0;
};

struct ExperimentSeries {
    std::string example;
    std::string quantity;
    std::string label;  // weight vector or profile id
    uint64_t seed = 0;
    std::vector<SeriesRow> rows;
};

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_ = 0.0;
    int points = 0;
};

// Ordinary least squares on (log R, log rms), after dropping the first
// drop_head rows and any row with rms < 1e-12. Throws InsufficientData if
// fewer than 4 usable rows remain.
FitResult fit_exponent(const ExperimentSeries& series, int drop_head);
FitResult fit_loglog(const std::vector<std::pair<double, double>>& points);

}  // namespace subtile
