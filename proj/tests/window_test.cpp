#include <doctest.h>

#include <cmath>
#include <map>

#include "subtile/config.hpp"
#include "subtile/errors.hpp"
#include "subtile/reference.hpp"
#include "subtile/rng.hpp"
#include "subtile/window.hpp"
#include "test_helpers.hpp"

using namespace subtile;

namespace {

// Cell-type map from the flat expansion, keyed by lattice cell.
std::map<std::pair<long long, long long>, int> cell_map(const Substitution& sub,
                                                        const Patch& patch) {
    std::map<std::pair<long long, long long>, int> cells;
    for (const PlacedTile& t : patch) {
        long long w = sub.dim == 2 ? sub.prototiles[t.type].extent[0]
                                   : std::llround(sub.lengths[t.type]);
        long long h = sub.dim == 2 ? sub.prototiles[t.type].extent[1] : 1;
        for (long long dy = 0; dy < h; ++dy)
            for (long long dx = 0; dx < w; ++dx)
                cells[{std::llround(t.pos[0]) + dx, std::llround(t.pos[1]) + dy}] = t.type;
    }
    return cells;
}

}  // namespace

TEST_CASE("window sizes and margins") {
    Substitution sym = builtin_substitution("sym95");
    Window w = make_window(sym, 0, 6);
    CHECK(w.extent()[0] == doctest::Approx(729.0));
    CHECK(w.extent()[1] == doctest::Approx(729.0));
    CHECK(w.margin() >= 364.0);

    Substitution ab = builtin_substitution("ab42");
    Window wa = make_window(ab, 0, 8);
    CHECK(wa.extent()[0] == doctest::Approx(65536.0));
    CHECK(wa.anchor()[0] == doctest::Approx(32768.0));
    CHECK(wa.margin() == doctest::Approx(32768.0));

    Window w0 = make_window(sym, 1, 0);
    CHECK(w0.extent()[0] == doctest::Approx(1.0));
    CHECK(w0.tile_at(Vec2{0.5, 0.5}).type == 1);
}

TEST_CASE("type_at follows the rule table") {
    Substitution sym = builtin_substitution("sym95");
    Window w1 = make_window(sym, 0, 1);
    CHECK(w1.tile_at(Vec2{0.5, 0.5}).type == 0);   // (0,0) child of A is A
    CHECK(w1.tile_at(Vec2{2.5, 0.5}).type == 1);   // (2,0) child of A is B
    CHECK(w1.tile_at(Vec2{1.5, 1.5}).type == 1);   // (1,1) child of A is B

    Window w3 = make_window(sym, 0, 3);
    CHECK(w3.tile_at(Vec2{0.5, 0.5}).type == 0);   // root corner stays A at all levels
}

TEST_CASE("type_at equals the flat expansion (n <= 4)") {
    for (const std::string& name : builtin_names()) {
        Substitution sub = builtin_substitution(name);
        for (int n = 1; n <= 4; ++n) {
            Window w = make_window(sub, 0, n);
            Patch patch = materialize(sub, 0, n);
            auto cells = cell_map(sub, patch);
            for (auto& [cell, type] : cells) {
                Vec2 p{cell.first + 0.5, sub.dim == 2 ? cell.second + 0.5 : 0.5};
                CHECK(w.tile_at(p).type == type);
            }
        }
    }
}

TEST_CASE("supertile_at: identity at k=0, root at k=n, nested in between") {
    Substitution sym = builtin_substitution("sym95");
    Window w = make_window(sym, 0, 5);
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        Vec2 p{rng.uniform(0.0, w.extent()[0]), rng.uniform(0.0, w.extent()[1])};
        Supertile s0 = w.supertile_at(p, 0);
        Tile0 t = w.tile_at(p);
        CHECK(s0.type == t.type);
        CHECK(s0.anchor[0] == doctest::Approx(t.anchor[0]));

        Supertile sn = w.supertile_at(p, 5);
        CHECK(sn.type == 0);
        CHECK(sn.anchor[0] == doctest::Approx(0.0));

        for (int k = 0; k < 5; ++k) {
            Supertile a = w.supertile_at(p, k);
            Supertile b = w.supertile_at(p, k + 1);
            Box inner = w.tile_box(a.type, a.level, a.anchor);
            Box outer = w.tile_box(b.type, b.level, b.anchor);
            CHECK(inner.lo[0] >= outer.lo[0] - 1e-9);
            CHECK(inner.hi[0] <= outer.hi[0] + 1e-9);
            CHECK(inner.lo[1] >= outer.lo[1] - 1e-9);
            CHECK(inner.hi[1] <= outer.hi[1] + 1e-9);
        }
    }
}

TEST_CASE("addresses are deterministic and decode through the rules") {
    Substitution table = builtin_substitution("table");
    Window w = make_window(table, 0, 4);
    Rng rng(5);
    for (int trial = 0; trial < 40; ++trial) {
        Vec2 p{rng.uniform(0.0, w.extent()[0]), rng.uniform(0.0, w.extent()[1])};
        Address a1 = w.address_at(p);
        Address a2 = w.address_at(p);
        CHECK(a1.digits == a2.digits);
        REQUIRE(a1.digits.size() == 4);
        // decode: walking the digits reproduces the queried tile type
        int type = a1.root_type;
        for (int digit : a1.digits) {
            REQUIRE(digit >= 0);
            REQUIRE(digit < static_cast<int>(table.rules[type].children.size()));
            type = table.rules[type].children[digit].type;
        }
        CHECK(type == w.tile_at(p).type);
    }
}

TEST_CASE("supertile addresses are prefixes of the full address") {
    Substitution sym = builtin_substitution("sym95");
    Window w = make_window(sym, 0, 5);
    Rng rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        Vec2 p{rng.uniform(0.0, w.extent()[0]), rng.uniform(0.0, w.extent()[1])};
        Address full = w.address_at(p);
        for (int k = 0; k <= 5; ++k) {
            auto [st, addr] = w.supertile_with_address(p, k);
            REQUIRE(addr.digits.size() == static_cast<size_t>(5 - k));
            for (size_t i = 0; i < addr.digits.size(); ++i)
                CHECK(addr.digits[i] == full.digits[i]);
            CHECK(st.level == k);
        }
    }
}

TEST_CASE("cursor queries match plain queries") {
    for (const std::string& name : {std::string("sym95"), std::string("ab42")}) {
        Substitution sub = builtin_substitution(name);
        Window w = make_window(sub, 0, 6);
        WindowCursor cur(w);
        Rng rng(7);
        for (int trial = 0; trial < 300; ++trial) {
            Vec2 p{rng.uniform(0.0, w.extent()[0]),
                   sub.dim == 2 ? rng.uniform(0.0, w.extent()[1]) : 0.0};
            Tile0 a = w.tile_at(p);
            Tile0 b = cur.tile_at(p);
            CHECK(a.type == b.type);
            CHECK(a.anchor[0] == doctest::Approx(b.anchor[0]));
        }
    }
}

TEST_CASE("margin violations throw") {
    Substitution sym = builtin_substitution("sym95");
    Window w = make_window(sym, 0, 2);
    CHECK_THROWS_AS(w.tile_at(Vec2{-0.5, 1.0}), MarginError);
    CHECK_THROWS_AS(w.tile_at(Vec2{1.0, 9.5}), MarginError);
    CHECK_THROWS_AS(w.require_margin(100.0), MarginError);
    CHECK(w.margin_ok(4.0));
}

TEST_CASE("raster matches point queries") {
    Substitution table = builtin_substitution("table");
    Window w = make_window(table, 0, 5);
    auto raster = w.raster(true);
    REQUIRE(raster->w == 32);
    REQUIRE(raster->h == 64);
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        long long x = rng.uniform_int(raster->w);
        long long y = rng.uniform_int(raster->h);
        auto [type, off] = w.type_at(Vec2{x + 0.5, y + 0.5});
        CHECK(raster->type_at(x, y) == type);
        long long wdt = table.prototiles[type].extent[0];
        long long expect = static_cast<long long>(off[1]) * wdt + static_cast<long long>(off[0]);
        CHECK(raster->suboff_at(x, y) == expect);
    }
}

TEST_CASE("cell-address anchoring") {
    Substitution sym = builtin_substitution("sym95");
    Window w = make_window(sym, 0, 3, AnchorMode::cell({4, 4}));
    // digit 4 is the middle child at offset (1,1): anchor after two descents
    // is 3*(1+... ) -> (3+1, 3+1) scaled: level2 child at (1,1)*3 = (3,3)? the
    // level-3 root child (1,1) has anchor (9,9) wait scale at level 2 is 9.
    CHECK(w.anchor()[0] == doctest::Approx(9.0 + 3.0));
    CHECK(w.anchor()[1] == doctest::Approx(9.0 + 3.0));
}
