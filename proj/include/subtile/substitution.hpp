#pragma once

#include <array>
#include <string>
#include <vector>

#include "subtile/geometry.hpp"
#include "subtile/matrix.hpp"

namespace subtile {

// A prototile is an axis-aligned lattice box with a type label. In one
// dimension the box is an interval whose geometric length may be rescaled
// away from the declared integer extent (see derive_lengths_1d).
struct Prototile {
    int id = 0;                      // 1-based, as written in configs
    std::array<int, 2> extent{1, 1}; // lattice side lengths (w) or (w,h)
    std::string color;               // fill used by the SVG export
};

struct Child {
    int type = 0;                        // 0-based prototile index
    std::array<long long, 2> offset{0, 0};  // lattice offset inside the scaled parent
};

struct Rule {
    std::vector<Child> children;
};

// A tile substitution: per prototile, a placement list that tiles the
// expansion-scaled prototile support exactly. All derived data (incidence
// matrix, expansion factor, one-dimensional lengths, geometric child
// offsets) is filled in by finalize_substitution and immutable afterwards.
struct Substitution {
    std::string name;
    int dim = 2;
    int expansion = 0;  // integer L; 0 in d=1 means "derived from the spectrum"
    std::vector<Prototile> prototiles;
    std::vector<Rule> rules;
    bool asserted_nonperiodic = false;
    std::string provenance;

    // Derived:
    IMat incidence;
    double lambda = 0.0;              // real expansion factor
    std::vector<double> lengths;      // d=1 geometric lengths (min = 1)
    std::vector<double> volumes;      // Lebesgue volume per prototile
    std::vector<std::vector<Vec2>> child_offsets;  // geometric offsets per rule
    bool integral_lattice = false;    // true when all tile corners sit on Z^d

    int num_types() const { return static_cast<int>(prototiles.size()); }

    // Level-0 tile size: (w,h) in d=2, (length,1) in d=1.
    Vec2 tile_size(int type) const {
        if (dim == 1) return {lengths[type], 1.0};
        return {static_cast<double>(prototiles[type].extent[0]),
                static_cast<double>(prototiles[type].extent[1])};
    }

    double volume(int type) const { return volumes[type]; }

    double max_tile_side() const {
        double m = 0;
        for (int t = 0; t < num_types(); ++t) {
            Vec2 s = tile_size(t);
            m = std::max(m, std::max(s[0], dim == 2 ? s[1] : 0.0));
        }
        return m;
    }
};

// S_{ij} = number of children of type i in rule j.
IMat build_incidence(const Substitution& sub);

struct GeometryReport {
    bool ok = true;
    std::vector<std::string> problems;
};

// Checks every rule for an exact disjoint cover of the scaled support:
// cell-by-cell occupancy in d=2, interval concatenation in d=1.
GeometryReport validate_geometry(const Substitution& sub);

// Geometric lengths for a one-dimensional substitution: the positive left
// Perron eigenvector of S, rescaled so the minimum length is 1. Also
// validates that concatenated child lengths match lambda times the parent
// length. Throws LengthMismatch on failure.
std::vector<double> derive_lengths_1d(const IMat& S, const Substitution& sub,
                                      double lambda, const std::vector<double>& perron_left);

// Runs structural checks, builds the incidence matrix, verifies primitivity
// and geometry, and fills all derived fields. Throws ParseError,
// GeometryError, NotPrimitive or LengthMismatch.
void finalize_substitution(Substitution& sub);

// A finite patch: translated prototiles with disjoint interiors.
struct PlacedTile {
    int type = 0;
    Vec2 pos{0.0, 0.0};
};
using Patch = std::vector<PlacedTile>;

// Applies the substitution `steps` times; positions scale by lambda each
// step. Throws OverflowError if coordinates leave the safe range.
Patch expand(const Substitution& sub, const Patch& patch, int steps);

}  // namespace subtile
