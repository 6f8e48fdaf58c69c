#include <doctest.h>

#include <cmath>

#include "subtile/config.hpp"
#include "subtile/errors.hpp"
#include "subtile/measures.hpp"
#include "subtile/reference.hpp"
#include "subtile/rng.hpp"

using namespace subtile;

TEST_CASE("phi on supertiles: eigenvector powers") {
    Substitution sym = builtin_substitution("sym95");
    PhiVector v = phi_vector(sym, {1.0, -1.0}, "u2", 5.0);
    CHECK(phi_plus_supertile(sym, v, 0, 0) == doctest::Approx(1.0));
    CHECK(phi_plus_supertile(sym, v, 0, 1) == doctest::Approx(-1.0));
    CHECK(phi_plus_supertile(sym, v, 3, 0) == doctest::Approx(125.0));

    Substitution table = builtin_substitution("table");
    PhiVector p = phi_vector(table, {1.0, 1.0}, "perron", 4.0);
    CHECK(phi_plus_supertile(table, p, 1, 0) == doctest::Approx(4.0));

    CHECK(phi_plus_supertile_exact(sym, {1, -1}, 6, 1) == -15625);
}

TEST_CASE("phi_vector rejects wrong eigen pairs") {
    Substitution sym = builtin_substitution("sym95");
    CHECK_THROWS_AS(phi_vector(sym, {1.0, -1.0}, "bad", 4.0), Error);
    CHECK_NOTHROW(phi_vector(sym, {2.0, 2.0}, "perron", 9.0));
}

TEST_CASE("phi on balls: zero vector, box equivalence") {
    Substitution sym = builtin_substitution("sym95");
    Window w = make_window(sym, 0, 5);
    PhiVector zero = phi_vector(sym, {0.0, 0.0}, "zero");
    CHECK(phi_plus_ball(zero, w, 37.25) == doctest::Approx(0.0));

    // Box-domain value on an exact supertile support is the matrix power.
    PhiVector v = phi_vector(sym, {1.0, -1.0}, "u2", 5.0);
    CHECK(phi_plus_box(sym, v, 4, 0) == doctest::Approx(625.0));
}

TEST_CASE("phi on balls agrees with the flat cell sum") {
    Substitution sym = builtin_substitution("sym95");
    double R = 81.0;  // 3^4
    int n = 6;
    Window w = make_window(sym, 0, n);
    Patch patch = materialize(sym, 0, n);
    PhiVector v = phi_vector(sym, {1.0, -1.0}, "u2", 5.0);

    Rng rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        Vec2 a{rng.uniform(R + 2, 729 - R - 2), rng.uniform(R + 2, 729 - R - 2)};
        Window wa = w.with_anchor(a);
        double hier = phi_plus_ball(v, wa, R);
        double flat = phi_ball_reference(sym, v.v, patch, a, R);
        CHECK(std::abs(hier - flat) <= 1e-6 * std::max(1.0, std::abs(flat)));
    }
}

TEST_CASE("phi on balls: R = 3^5 against the hierarchy-free cell sum") {
    Substitution sym = builtin_substitution("sym95");
    double R = 243.0;
    Window w = make_window(sym, 0, 7);
    auto raster = w.raster();
    PhiVector v = phi_vector(sym, {1.0, -1.0}, "u2", 5.0);

    Vec2 a = w.anchor();
    double hier = phi_plus_ball(v, w, R);
    double flat = 0;
    for (long long y = std::llround(a[1] - R) - 1; y <= std::llround(a[1] + R) + 1; ++y)
        for (long long x = std::llround(a[0] - R) - 1; x <= std::llround(a[0] + R) + 1; ++x) {
            Box cell{{static_cast<double>(x), static_cast<double>(y)},
                     {static_cast<double>(x + 1), static_cast<double>(y + 1)}};
            flat += v.v[raster->type_at(x, y)] * clipped_cell_volume(cell, 2, a, R);
        }
    CHECK(std::abs(hier - flat) <= 1e-6 * std::max(1.0, std::abs(flat)));
}

TEST_CASE("m_phi_minus") {
    Substitution sym = builtin_substitution("sym95");
    CylindricalFunction f = CylindricalFunction::constants(sym, {1.0, -1.0});
    CHECK(m_phi_minus(f, {1.0, -1.0}) == doctest::Approx(2.0));
    CHECK(m_phi_minus(f, {0.0, 0.0}) == doctest::Approx(0.0));
    CylindricalFunction zero = CylindricalFunction::constants(sym, {0.0, 0.0});
    CHECK(m_phi_minus(zero, {3.0, 7.0}) == doctest::Approx(0.0));
}

TEST_CASE("self-similarity is exact on supertile unions") {
    for (const std::string& name : builtin_names()) {
        Substitution sub = builtin_substitution(name);
        SpectralData sd = spectral_data(sub);
        Window w = make_window(sub, 0, 6);
        Rng rng(43);

        // integral eigenvectors of S^t for the builtins: the theta2 and
        // Perron directions after rescaling
        std::vector<std::pair<std::vector<long long>, long long>> eigens;
        if (name == "table") eigens = {{{1, 1}, 4}, {{1, -1}, 0}};
        if (name == "ab42") eigens = {{{1, 1}, 4}, {{1, -1}, 2}};
        if (name == "sym95") eigens = {{{1, 1}, 9}, {{1, -1}, 5}};

        for (auto& [v, theta] : eigens) {
            for (int trial = 0; trial < 100; ++trial) {
                int k = static_cast<int>(rng.uniform_int(5));
                SupertileDomain dom;
                for (int parts = 0; parts < 3; ++parts) {
                    Vec2 p{rng.uniform(0.0, w.extent()[0]),
                           sub.dim == 2 ? rng.uniform(0.0, w.extent()[1]) : 0.5};
                    dom.parts.push_back(w.supertile_at(p, k));
                }
                SelfSimilarityReport rep = self_similarity_supertiles(sub, v, theta, dom);
                CHECK(rep.exact_arithmetic);
                CHECK(rep.lhs == rep.rhs);
                CHECK(rep.rel_error == 0.0);
            }
        }
    }
}

TEST_CASE("self-similarity scales linearly in v") {
    Substitution sym = builtin_substitution("sym95");
    Window w = make_window(sym, 0, 4);
    SupertileDomain dom{{w.supertile_at(Vec2{10.5, 20.5}, 2), w.supertile_at(Vec2{70.5, 12.5}, 2)}};
    SelfSimilarityReport a = self_similarity_supertiles(sym, {1, -1}, 5, dom);
    SelfSimilarityReport b = self_similarity_supertiles(sym, {3, -3}, 5, dom);
    CHECK(b.lhs == doctest::Approx(3.0 * a.lhs));
    CHECK(b.rhs == doctest::Approx(3.0 * a.rhs));
}

TEST_CASE("self-similarity on balls has small relative discrepancy") {
    Substitution sym = builtin_substitution("sym95");
    SpectralData sd = spectral_data(sym);
    double R = 81.0;  // 3^4
    Window w = make_window(sym, 0, 6);
    Rng rng(47);
    Vec2 a{rng.uniform(2 * R, 729 - 2 * R), rng.uniform(2 * R, 729 - 2 * R)};
    PhiVector v = phi_from_left(sd, 1);
    SelfSimilarityReport rep = self_similarity_ball(v, w.with_anchor(a), R);
    CHECK(rep.rel_error <= 0.05);
}
