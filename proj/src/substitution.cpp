#include "subtile/substitution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "subtile/errors.hpp"

namespace subtile {

namespace {

constexpr double kCoordBound = 1e14;  // expand() refuses coordinates beyond this

// Positive Perron eigenpair of S^t by power iteration. Primitivity makes
// this converge; the eigenvector is normalized to max entry 1.
std::pair<double, std::vector<double>> perron_left(const IMat& S) {
    int m = S.n;
    std::vector<double> x(m, 1.0);
    double theta = 0.0;
    for (int it = 0; it < 20000; ++it) {
        std::vector<double> y = mat_t_vec(S, x);
        double mx = *std::max_element(y.begin(), y.end());
        for (double& v : y) v /= mx;
        double delta = 0.0;
        for (int i = 0; i < m; ++i) delta = std::max(delta, std::abs(y[i] - x[i]));
        x = std::move(y);
        theta = mx;
        if (delta < 1e-15 && it > 8) break;
    }
    // Rayleigh-style polish of the eigenvalue.
    std::vector<double> y = mat_t_vec(S, x);
    double num = 0, den = 0;
    for (int i = 0; i < m; ++i) {
        num += y[i] * x[i];
        den += x[i] * x[i];
    }
    theta = num / den;
    return {theta, x};
}

void structural_checks(const Substitution& sub) {
    int m = sub.num_types();
    if (sub.dim != 1 && sub.dim != 2) throw ParseError("dimension must be 1 or 2");
    if (m < 1) throw ParseError("at least one prototile required");
    if (m > 64) throw ParseError("too many prototiles (max 64)");
    for (int t = 0; t < m; ++t) {
        const Prototile& p = sub.prototiles[t];
        for (int ax = 0; ax < sub.dim; ++ax) {
            if (p.extent[ax] < 1 || p.extent[ax] > 64)
                throw ParseError("prototile " + std::to_string(p.id) + ": extent out of range [1,64]");
        }
    }
    if (static_cast<int>(sub.rules.size()) != m)
        throw ParseError("need exactly one rule per prototile");
    if (sub.dim == 2 && sub.expansion < 2) throw ParseError("expansion must be an integer >= 2");
    if (sub.dim == 1 && sub.expansion != 0 && sub.expansion < 2)
        throw ParseError("expansion must be >= 2 or omitted for d=1");
    for (int j = 0; j < m; ++j) {
        if (sub.rules[j].children.empty())
            throw ParseError("rule " + std::to_string(j + 1) + " has no children");
        for (const Child& c : sub.rules[j].children) {
            if (c.type < 0 || c.type >= m)
                throw ParseError("rule " + std::to_string(j + 1) + ": child type out of range");
            for (int ax = 0; ax < sub.dim; ++ax)
                if (c.offset[ax] < 0)
                    throw ParseError("rule " + std::to_string(j + 1) + ": negative child offset");
        }
    }
}

}  // namespace

IMat build_incidence(const Substitution& sub) {
    int m = sub.num_types();
    IMat S(m);
    for (int j = 0; j < m; ++j)
        for (const Child& c : sub.rules[j].children) S.at(c.type, j) += 1;
    return S;
}

GeometryReport validate_geometry(const Substitution& sub) {
    GeometryReport rep;
    int m = sub.num_types();
    for (int j = 0; j < m; ++j) {
        const Rule& rule = sub.rules[j];
        if (sub.dim == 1) {
            // Children must concatenate: offsets strictly increasing and equal
            // to the partial sums of the child extents.
            std::vector<Child> kids = rule.children;
            std::sort(kids.begin(), kids.end(),
                      [](const Child& a, const Child& b) { return a.offset[0] < b.offset[0]; });
            long long pos = 0;
            for (const Child& c : kids) {
                if (c.offset[0] != pos) {
                    rep.ok = false;
                    rep.problems.push_back("rule " + std::to_string(j + 1) + ": child at offset " +
                                           std::to_string(c.offset[0]) + " expected at " +
                                           std::to_string(pos) + (c.offset[0] > pos ? " (gap)" : " (overlap)"));
                    break;
                }
                pos += sub.prototiles[c.type].extent[0];
            }
            if (sub.expansion >= 2 && rep.ok) {
                long long want = static_cast<long long>(sub.expansion) * sub.prototiles[j].extent[0];
                if (pos != want) {
                    rep.ok = false;
                    rep.problems.push_back("rule " + std::to_string(j + 1) + ": total child length " +
                                           std::to_string(pos) + " != " + std::to_string(want));
                }
            }
            continue;
        }
        // d=2: cell-by-cell occupancy of the scaled support.
        long long W = static_cast<long long>(sub.expansion) * sub.prototiles[j].extent[0];
        long long H = static_cast<long long>(sub.expansion) * sub.prototiles[j].extent[1];
        std::vector<int> occ(static_cast<size_t>(W * H), 0);
        for (const Child& c : rule.children) {
            long long w = sub.prototiles[c.type].extent[0];
            long long h = sub.prototiles[c.type].extent[1];
            for (long long dy = 0; dy < h; ++dy)
                for (long long dx = 0; dx < w; ++dx) {
                    long long x = c.offset[0] + dx, y = c.offset[1] + dy;
                    if (x < 0 || x >= W || y < 0 || y >= H) {
                        rep.ok = false;
                        rep.problems.push_back("rule " + std::to_string(j + 1) + ": child sticks out at cell (" +
                                               std::to_string(x) + "," + std::to_string(y) + ")");
                        continue;
                    }
                    if (++occ[static_cast<size_t>(y * W + x)] > 1) {
                        rep.ok = false;
                        rep.problems.push_back("rule " + std::to_string(j + 1) + ": overlap at cell (" +
                                               std::to_string(x) + "," + std::to_string(y) + ")");
                    }
                }
        }
        for (long long y = 0; y < H && rep.problems.size() < 64; ++y)
            for (long long x = 0; x < W; ++x)
                if (occ[static_cast<size_t>(y * W + x)] == 0) {
                    rep.ok = false;
                    rep.problems.push_back("rule " + std::to_string(j + 1) + ": gap at cell (" +
                                           std::to_string(x) + "," + std::to_string(y) + ")");
                }
    }
    return rep;
}

std::vector<double> derive_lengths_1d(const IMat& S, const Substitution& sub,
                                      double lambda, const std::vector<double>& perron_left_vec) {
    int m = S.n;
    std::vector<double> len = perron_left_vec;
    double mn = *std::min_element(len.begin(), len.end());
    if (!(mn > 0)) throw LengthMismatch("Perron left eigenvector not positive");
    for (double& v : len) v /= mn;
    // Each rule's concatenated child lengths must reproduce lambda times the
    // parent length. This is the eigenvector identity; check it numerically.
    for (int j = 0; j < m; ++j) {
        double total = 0;
        for (const Child& c : sub.rules[j].children) total += len[c.type];
        double want = lambda * len[j];
        if (std::abs(total - want) > 1e-9 * std::max(1.0, want))
            throw LengthMismatch("rule " + std::to_string(j + 1) + ": child lengths sum to " +
                                 std::to_string(total) + ", expected " + std::to_string(want));
    }
    return len;
}

void finalize_substitution(Substitution& sub) {
    structural_checks(sub);
    sub.incidence = build_incidence(sub);

    GeometryReport rep = validate_geometry(sub);
    if (!rep.ok) {
        std::string msg;
        for (const std::string& p : rep.problems) {
            if (!msg.empty()) msg += "; ";
            msg += p;
        }
        throw GeometryError(0, 0, 0, msg);
    }

    if (!is_primitive(sub.incidence))
        throw NotPrimitive("incidence matrix is not primitive");

    int m = sub.num_types();
    if (sub.dim == 2) {
        sub.lambda = static_cast<double>(sub.expansion);
        sub.lengths.clear();
        sub.volumes.resize(m);
        for (int t = 0; t < m; ++t)
            sub.volumes[t] = static_cast<double>(sub.prototiles[t].extent[0]) *
                             static_cast<double>(sub.prototiles[t].extent[1]);
        sub.child_offsets.assign(m, {});
        for (int j = 0; j < m; ++j)
            for (const Child& c : sub.rules[j].children)
                sub.child_offsets[j].push_back(
                    {static_cast<double>(c.offset[0]), static_cast<double>(c.offset[1])});
        sub.integral_lattice = true;
        return;
    }

    // d=1: the expansion factor is the Perron eigenvalue and the geometric
    // lengths come from the left Perron eigenvector.
    auto [theta1, left] = perron_left(sub.incidence);
    sub.lambda = theta1;
    if (sub.expansion >= 2 && std::abs(sub.lambda - sub.expansion) > 1e-9 * sub.lambda)
        throw LengthMismatch("declared expansion " + std::to_string(sub.expansion) +
                             " does not match Perron eigenvalue " + std::to_string(sub.lambda));
    sub.lengths = derive_lengths_1d(sub.incidence, sub, sub.lambda, left);
    sub.volumes = sub.lengths;

    sub.child_offsets.assign(m, {});
    bool integral = std::abs(sub.lambda - std::round(sub.lambda)) < 1e-9;
    for (int j = 0; j < m; ++j) {
        std::vector<Child> kids = sub.rules[j].children;
        std::sort(kids.begin(), kids.end(),
                  [](const Child& a, const Child& b) { return a.offset[0] < b.offset[0]; });
        // Keep geometric offsets aligned with the rule's child order.
        std::vector<double> pos_by_offset;
        double pos = 0;
        std::vector<std::pair<long long, double>> start;
        for (const Child& c : kids) {
            start.emplace_back(c.offset[0], pos);
            pos += sub.lengths[c.type];
        }
        for (const Child& c : sub.rules[j].children) {
            double p = 0;
            for (auto& [off, s] : start)
                if (off == c.offset[0]) p = s;
            sub.child_offsets[j].push_back({p, 0.0});
            if (std::abs(p - std::round(p)) > 1e-9) integral = false;
        }
    }
    for (double l : sub.lengths)
        if (std::abs(l - std::round(l)) > 1e-9) integral = false;
    sub.integral_lattice = integral;
}

Patch expand(const Substitution& sub, const Patch& patch, int steps) {
    Patch cur = patch;
    for (int s = 0; s < steps; ++s) {
        Patch next;
        size_t grow = 0;
        for (const PlacedTile& t : cur) grow += sub.rules[t.type].children.size();
        next.reserve(grow);
        for (const PlacedTile& t : cur) {
            for (size_t c = 0; c < sub.rules[t.type].children.size(); ++c) {
                const Child& ch = sub.rules[t.type].children[c];
                Vec2 off = sub.child_offsets[t.type][c];
                Vec2 p{sub.lambda * t.pos[0] + off[0],
                       sub.dim == 2 ? sub.lambda * t.pos[1] + off[1] : 0.0};
                if (std::abs(p[0]) > kCoordBound || std::abs(p[1]) > kCoordBound)
                    throw OverflowError("expand: coordinates exceed safe bound");
                next.push_back({ch.type, p});
            }
        }
        cur = std::move(next);
    }
    return cur;
}

}  // namespace subtile
