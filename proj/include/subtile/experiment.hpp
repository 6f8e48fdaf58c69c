#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "subtile/ergodic.hpp"
#include "subtile/rng.hpp"
#include "subtile/spectral.hpp"

namespace subtile {

// A substitution together with its eigendata and tile frequencies.
struct Model {
    std::shared_ptr<const Substitution> sub;
    SpectralData sd;
    std::vector<double> freq;
};

Model make_model(Substitution sub);

struct Sampling {
    int anchors = 64;
    uint64_t seed = kDefaultSeed;
    int threads = 1;
};

// Smallest hierarchy depth whose window leaves room for anchors with
// clearance `need` on all sides plus a comparable interior spread.
int levels_for(const Substitution& sub, int root_type, double need);

Window experiment_window(const Model& model, int root_type, double need);

// Uniform anchors in the interior box that keeps `need` clearance to every
// window face. Positions are real-valued; the stream depends only on the
// seed.
std::vector<Vec2> sample_anchors(const Window& window, double need, int count, Rng& rng);

// Growth of |Phi^+_v(B_R)| along R = lambda^N: per N the signed mean and
// the root-mean-square over anchors.
ExperimentSeries phi_growth_series(const Model& model, const PhiVector& v, int Nmin, int Nmax,
                                   const Sampling& sampling);

struct DeviationSeries {
    ExperimentSeries sums;       // S(f, ., lambda^N)
    ExperimentSeries residuals;  // deviation expansion remainder
};

DeviationSeries deviation_series(const Model& model, const CylindricalFunction& f, int Nmin,
                                 int Nmax, const Sampling& sampling);

// Window + anchor plumbing around scaling_profile / eta_profile.
ScalingProfile run_scaling(const Model& model, const CylindricalFunction& f,
                           const KernelSpec& kernel, int Nmin, int Nmax,
                           const Sampling& sampling);

std::vector<EtaRow> run_eta(const Model& model, const CylindricalFunction& f,
                            const KernelSpec& kernel, const std::vector<double>& a_grid,
                            const std::vector<int>& Ns, const Sampling& sampling);

}  // namespace subtile
