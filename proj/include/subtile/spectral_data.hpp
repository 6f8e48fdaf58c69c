#pragma once

#include <vector>

#include "subtile/substitution.hpp"

namespace subtile {

// Eigendata of the incidence matrix S and its transpose.
//
// Eigenvalues are sorted by decreasing modulus; real parts are stored.
// right[n] is an eigenvector of S and left[n] one of S^t, normalized so
// that left[n] . right[k] = delta_{nk}. Vectors are only guaranteed for
// real simple eigenvalues (empty otherwise); the rapidly expanding part
// |theta| > theta1^((d-1)/d) is always covered or construction throws
// DegenerateSpectrum.
//
// left[0] is proportional to the volume vector, so the Perron term of the
// deviation expansion reproduces Lebesgue measure on supertiles exactly.
struct SpectralData {
    IMat S;
    int dim = 2;
    std::vector<double> eigenvalues;
    std::vector<std::vector<double>> right;
    std::vector<std::vector<double>> left;
    double theta1 = 0.0;
    double theta2 = 0.0;    // NaN when there is a single prototile
    double alpha = 0.0;     // d log(theta2)/log(theta1); NaN if theta2 <= 0
    double cutoff = 0.0;    // theta1^((d-1)/d)
    int expanding_dims = 0; // #{n : |theta_n| > cutoff}
    int jordan_s = 0;       // 1 if some |theta_n| sits exactly on the cutoff
    bool hypothesis_ok = false;  // theta2 real, simple, > cutoff
};

// Full eigenanalysis. Requires a primitive incidence matrix; throws
// DegenerateSpectrum in the unsupported regimes (complex or multiple
// theta2, non-diagonalizable expanding part).
SpectralData spectral_data(const Substitution& sub);

// freq_i = r1_i / sum_j r1_j vol_j, so that sum_i freq_i vol_i = 1.
// The mean of a cylindrical function is sum_i freq_i * integral(Psi_i).
std::vector<double> tile_frequencies(const SpectralData& sd, const Substitution& sub);

}  // namespace subtile
