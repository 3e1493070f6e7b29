#include <doctest.h>

#include <vector>

#include "genpas/editdist.hpp"
#include "oracle.hpp"

using namespace genpas;

namespace {

std::vector<ItemId> random_items(Rng& rng, std::size_t len, ItemId universe) {
    std::vector<ItemId> out;
    for (std::size_t i = 0; i < len; ++i) out.push_back(static_cast<ItemId>(rng.below(universe)));
    return out;
}

}  // namespace

TEST_CASE("hand-checked distances and similarities") {
    struct Row {
        std::vector<ItemId> a, b;
        std::size_t dist;
    };
    // clang-format off
    const std::vector<Row> rows{
        {{1, 2, 3, 4},        {1, 3, 4},           1},
        {{5, 6, 7},           {5, 6, 7},           0},
        {{1},                 {2},                 1},
        {{1, 2},              {2, 1},              2},
        {{1, 2, 3},           {1, 2, 3, 4, 5},     2},
        {{1, 2, 3, 4, 5},     {2, 3, 4},           2},
        {{1, 2, 3},           {4, 5, 6},           3},
        {{1, 2, 3},           {3, 2, 1},           2},
        {{7},                 {7},                 0},
        {{1, 1, 1, 1},        {1, 1},              2},
        {{1, 2, 1, 2, 1},     {2, 1, 2},           2},
        {{4, 5, 6, 7},        {5, 6},              2},
        {{1, 2, 3, 4},        {2, 3, 4, 5},        2},
        {{9, 8},              {8, 9, 8},           1},
        {{1, 2, 3, 4, 5, 6},  {1, 2, 9, 4, 5, 6},  1},
        {{1},                 {1, 2, 3, 4},        3},
        {{2, 4, 6, 8, 10},    {1, 2, 4, 6, 8},     2},
        {{5, 5, 5},           {5, 5, 5, 5, 5, 5},  3},
        {{1, 3, 5, 7},        {1, 5, 3, 7},        2},
        {{10, 20, 30},        {10, 30},            1},
    };
    // clang-format on
    REQUIRE(rows.size() == 20);
    for (const Row& r : rows) {
        CHECK(edit_distance(r.a, r.b) == r.dist);
        const double max_len = static_cast<double>(std::max(r.a.size(), r.b.size()));
        CHECK(similarity(r.a, r.b) ==
              doctest::Approx(1.0 - static_cast<double>(r.dist) / max_len).epsilon(1e-15));
    }
    // The worked normalized-distance example: 1/max(4,3) = 0.25.
    const std::vector<ItemId> wa{1, 2, 3, 4}, wb{1, 3, 4};
    CHECK(similarity(wa, wb) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("property: distance matches the recursive oracle") {
    Rng rng(31);
    for (int iter = 0; iter < 10000; ++iter) {
        const auto a = random_items(rng, 1 + rng.below(11), 6);
        const auto b = random_items(rng, 1 + rng.below(11), 6);
        CHECK(edit_distance(a, b) == oracle::edit_distance(a, b));
    }
}

TEST_CASE("property: similarity is symmetric and bounded") {
    Rng rng(32);
    for (int iter = 0; iter < 10000; ++iter) {
        const auto a = random_items(rng, 1 + rng.below(14), 5);
        const auto b = random_items(rng, 1 + rng.below(14), 5);
        const double s = similarity(a, b);
        CHECK(s == similarity(b, a));
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
        CHECK((s == 1.0) == (a == b));
    }
}

TEST_CASE("property: triangle inequality for the unnormalized distance") {
    Rng rng(33);
    for (int iter = 0; iter < 3000; ++iter) {
        const auto a = random_items(rng, 1 + rng.below(9), 4);
        const auto b = random_items(rng, 1 + rng.below(9), 4);
        const auto c = random_items(rng, 1 + rng.below(9), 4);
        CHECK(edit_distance(a, c) <= edit_distance(a, b) + edit_distance(b, c));
    }
}

TEST_CASE("long inputs are truncated to their most recent window") {
    std::vector<ItemId> a(600, 0), b(600, 0);
    for (std::size_t i = 0; i < 88; ++i) b[i] = 9;  // differences fall off the window
    CHECK(similarity(a, b) == 1.0);

    std::vector<ItemId> c = a;
    c.back() = 7;
    CHECK(similarity(a, c) == doctest::Approx(1.0 - 1.0 / 512.0).epsilon(1e-15));

    // Explicit cap: only the last 4 items take part.
    const std::vector<ItemId> ca{1, 2, 3, 4, 5, 6}, cb{9, 9, 3, 4, 5, 6};
    CHECK(similarity(ca, cb, 4) == 1.0);
    CHECK(similarity(ca, cb) == doctest::Approx(1.0 - 2.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("empty sequences are rejected, zero cap is rejected") {
    const std::vector<ItemId> none, one{1}, two{1, 2};
    CHECK_THROWS_AS(similarity(none, one), Error);
    CHECK_THROWS_AS(similarity(one, none), Error);
    CHECK_THROWS_AS(similarity(one, one, 0), Error);
    // The raw distance itself is total.
    CHECK(edit_distance(none, none) == 0);
    CHECK(edit_distance(none, two) == 2);
}
