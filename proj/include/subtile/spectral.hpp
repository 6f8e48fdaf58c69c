#pragma once

#include <optional>
#include <vector>

#include "subtile/cylindrical.hpp"
#include "subtile/ergodic.hpp"
#include "subtile/spectral_data.hpp"
#include "subtile/window.hpp"

namespace subtile {

// Gaussian test kernel, self-dual under the Fourier transform: the profile
// e^{-pi r^2} transforms to itself, so the smoothed amplitude has
// closed-form per-cell integrals through the error function.
//
// The spatial scale used at nominal radius R is s = scale_mult * R; the
// estimator then probes the spectral mass near frequency radius ~ 1/s.
// Integrals are truncated at |x - anchor| <= tau * s per axis; the
// discarded tail mass is below 1e-12 already at tau = 6.
struct KernelSpec {
    double tau = 6.0;
    double scale_mult = 1.0;
};

struct Estimate {
    double value = 0.0;
    double stderr_ = 0.0;
    int anchors = 0;
};

// V_s = integral of the profile field against e^{-pi |x-anchor|^2 / s^2},
// s = scale_mult * R. For a constant field c this is c * s^d.
double smoothed_ball_amplitude(const CylindricalFunction& f, const Window& window, double R,
                               const KernelSpec& kernel);

// G(R) = s^{-2d} * mean over anchors of V_s^2. Scaling the kernel by c is
// identical to evaluating the plain-kernel G at cR.
Estimate spectral_form(const CylindricalFunction& f, const Window& window, double R,
                       const KernelSpec& kernel, const std::vector<Vec2>& anchors,
                       int threads = 1);

// G(lambda^N) for N in [Nmin, Nmax] plus a log-log slope. The expected
// slope under the scaling law is 2 alpha - 2d. If the spectral hypotheses
// fail (theta2 at or below the cutoff, nonzero mean, vanishing pairing
// with the theta2 direction) the series is still produced and the result
// carries hypothesis_ok = false with a note.
struct ScalingProfile {
    ExperimentSeries series;       // value = G, stderr_ per row
    std::optional<FitResult> fit;  // on log G vs log R
    double expected_slope = 0.0;   // NaN when hypotheses fail
    std::vector<double> normalized;  // G(lambda^N) / lambda^{N(2a-2d)}
    bool hypothesis_ok = false;
    std::string note;
};

ScalingProfile scaling_profile(const CylindricalFunction& f, const Window& window,
                               const KernelSpec& kernel, int Nmin, int Nmax,
                               const std::vector<Vec2>& anchors, const SpectralData& sd,
                               const std::vector<double>& freq, int threads = 1);

// Normalized small-ball witness: for each a in the grid, the value
// G(lambda^N / a) * lambda^{N(2d-2a)} estimated with the kernel stretched
// by a (probing frequency balls of radius ~ a lambda^{-N}). Non-decreasing
// in a up to estimator noise. Throws HypothesisViolated if the scaling-law
// hypotheses fail.
struct EtaRow {
    double a = 0.0;
    int N = 0;
    double value = 0.0;
    double stderr_ = 0.0;
};

std::vector<EtaRow> eta_profile(const CylindricalFunction& f, const Window& window,
                                const KernelSpec& kernel, const std::vector<double>& a_grid,
                                const std::vector<int>& Ns, const std::vector<Vec2>& anchors,
                                const SpectralData& sd, const std::vector<double>& freq,
                                int threads = 1);

// Autocorrelation <f o h_x, f> estimated by exact piecewise-constant
// integration over a box of side `region` at each anchor. The Gram variant
// returns the matrix M[p][q] = <f o h_{x_p}, f o h_{x_q}>, positive
// semidefinite by construction.
Estimate correlation(const CylindricalFunction& f, const Window& window, Vec2 lag,
                     const std::vector<Vec2>& anchors, double region);

std::vector<std::vector<Estimate>> correlation_gram(const CylindricalFunction& f,
                                                    const Window& window,
                                                    const std::vector<Vec2>& lags,
                                                    const std::vector<Vec2>& anchors,
                                                    double region);

}  // namespace subtile
