#pragma once

#include <vector>

#include "subtile/cylindrical.hpp"
#include "subtile/geometry.hpp"
#include "subtile/substitution.hpp"

namespace subtile {

// Brute-force reference paths: flat patch enumeration with no supertile
// hierarchy. They are deliberately simple and independent of the window
// engine, and exist to cross-check it.

// zeta^levels applied to a single tile of the given type anchored at 0.
Patch materialize(const Substitution& sub, int root_type, int levels);

// Integral of the profile field over B(center, rho), tile by tile.
double ergodic_integral_reference(const Substitution& sub, const CylindricalFunction& f,
                                  const Patch& patch, const Vec2& center, double rho);

// Additive measure of B(center, R): v weight per tile, clipped fractionally.
double phi_ball_reference(const Substitution& sub, const std::vector<double>& v,
                          const Patch& patch, const Vec2& center, double R);

// Gaussian-smoothed amplitude at spatial scale s with radial truncation at
// tau*s, summed per subcell.
double smoothed_amplitude_reference(const Substitution& sub, const CylindricalFunction& f,
                                    const Patch& patch, const Vec2& center, double s, double tau,
                                    int refine);

}  // namespace subtile
