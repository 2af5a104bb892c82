#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "passcast/error.hpp"
#include "passcast/features.hpp"
#include "passcast/rng.hpp"
#include "synthetic.hpp"

using namespace passcast;

namespace {

const FieldSpec kField{};

double clip(double v) { return std::clamp(v, -1.5, 1.5); }

double direction(Vec2 from, Vec2 to) {
    if (from.x == to.x && from.y == to.y) return 0.0;
    double a = std::atan2(to.y - from.y, to.x - from.x) * 180.0 / std::numbers::pi;
    if (a >= 180.0) a -= 360.0;
    return a;
}

/// Feature vector written out longhand from the column order in the README.
std::vector<double> reference_features(const Snapshot& s, FeatureLevel level) {
    const Vec2 points[9] = {{-52.5, 0}, {52.5, 0}, {0, 0}, {-52.5, -34}, {-52.5, 34},
                            {52.5, -34}, {52.5, 34}, {-41.5, 0}, {41.5, 0}};
    std::vector<Vec2> mates, opps;
    for (int u = 1; u <= 11; ++u) mates.push_back(s.player(Side::Left, u).pos);
    for (int u = 1; u <= 11; ++u) opps.push_back(s.player(Side::Right, u).pos);
    std::vector<Vec2> everyone = mates;
    everyone.insert(everyone.end(), opps.begin(), opps.end());
    const auto d = [](Vec2 a, Vec2 b) { return std::hypot(a.x - b.x, a.y - b.y); };

    std::vector<double> f;
    f.push_back(clip(s.ball_pos.x / 52.5));
    f.push_back(clip(s.ball_pos.y / 34));
    f.push_back(clip(s.ball_vel.x / 3));
    f.push_back(clip(s.ball_vel.y / 3));
    for (Vec2 p : everyone) {
        f.push_back(clip(p.x / 52.5));
        f.push_back(clip(p.y / 34));
    }
    for (Side side : {Side::Left, Side::Right}) {
        for (int u = 1; u <= 11; ++u) {
            f.push_back(clip(s.player(side, u).vel.x / 3));
            f.push_back(clip(s.player(side, u).vel.y / 3));
        }
    }
    if (level == FeatureLevel::Low) return f;

    for (Vec2 q : points) f.push_back(clip(d(s.ball_pos, q) / 130));
    for (Vec2 q : points) f.push_back(clip(direction(s.ball_pos, q) / 180));
    for (Vec2 p : everyone) f.push_back(clip(d(s.ball_pos, p) / 130));
    for (Vec2 p : everyone) f.push_back(clip(direction(s.ball_pos, p) / 180));
    for (Vec2 p : everyone) {
        for (Vec2 q : points) f.push_back(clip(d(p, q) / 130));
    }
    if (level == FeatureLevel::Mid) return f;

    for (Vec2 m : mates) f.push_back(clip(passcast::testing::reference_free_angle(s.ball_pos, m, opps) / 180));
    for (std::size_t u = 0; u < 11; ++u) {
        double best = 1e300;
        for (std::size_t v = 0; v < 11; ++v) {
            if (v != u) best = std::min(best, d(mates[u], mates[v]));
        }
        f.push_back(clip(best / 130));
    }
    for (Vec2 m : mates) {
        double best = 1e300;
        for (Vec2 o : opps) best = std::min(best, d(m, o));
        f.push_back(clip(best / 130));
    }
    return f;
}

}  // namespace

TEST(Features, DimensionsPerLevel) {
    Rng rng(1);
    const Snapshot s = passcast::testing::random_snapshot(rng);
    EXPECT_EQ(extract(s, FeatureLevel::Low, kField).values.size(), 92u);
    EXPECT_EQ(extract(s, FeatureLevel::Mid, kField).values.size(), 352u);
    EXPECT_EQ(extract(s, FeatureLevel::High, kField).values.size(), 385u);
    EXPECT_EQ(extract(s, FeatureLevel::High, kField).level, FeatureLevel::High);
}

TEST(Features, LayoutMatchesTableRows) {
    const auto dims_of = [](FeatureLevel level) {
        std::vector<std::size_t> out;
        for (const auto& b : feature_layout(level)) out.push_back(b.dims);
        return out;
    };
    const std::vector<std::size_t> low{2, 2, 22, 22, 22, 22};
    std::vector<std::size_t> mid = low;
    for (std::size_t n : {9, 9, 22, 22, 198}) mid.push_back(n);
    std::vector<std::size_t> high = mid;
    for (std::size_t n : {11, 11, 11}) high.push_back(n);
    EXPECT_EQ(dims_of(FeatureLevel::Low), low);
    EXPECT_EQ(dims_of(FeatureLevel::Mid), mid);
    EXPECT_EQ(dims_of(FeatureLevel::High), high);
    // Table row totals: positions 44, velocities 44, players-to-points 198.
    EXPECT_EQ(2 + 2 + 44 + 44, 92);
    EXPECT_EQ(std::accumulate(low.begin(), low.end(), std::size_t{0}), kLowDims);
    EXPECT_EQ(std::accumulate(mid.begin(), mid.end(), std::size_t{0}), kMidDims);
    EXPECT_EQ(std::accumulate(high.begin(), high.end(), std::size_t{0}), kHighDims);
}

TEST(Features, LevelNames) {
    for (FeatureLevel level : {FeatureLevel::Low, FeatureLevel::Mid, FeatureLevel::High}) {
        EXPECT_EQ(parse_level(level_name(level)), level);
        EXPECT_EQ(level_for_dims(feature_dims(level)), level);
    }
    EXPECT_FALSE(parse_level("ultra"));
    EXPECT_FALSE(level_for_dims(100));
}

TEST(Features, MatchesLonghandReference) {
    Rng rng(5);
    for (int i = 0; i < 300; ++i) {
        const Snapshot s = passcast::testing::random_snapshot(rng);
        for (FeatureLevel level : {FeatureLevel::Low, FeatureLevel::Mid, FeatureLevel::High}) {
            const auto got = extract(s, level, kField).values;
            const auto want = reference_features(s, level);
            ASSERT_EQ(got.size(), want.size());
            for (std::size_t k = 0; k < got.size(); ++k) {
                // The free-angle block goes through acos in the reference.
                const double tol = k >= 352 && k < 363 ? 1e-7 : 1e-12;
                ASSERT_NEAR(got[k], want[k], tol) << "index " << k << " level " << level_name(level);
            }
        }
    }
}

TEST(Features, LevelPrefixesAreBitExact) {
    Rng rng(6);
    for (int i = 0; i < 200; ++i) {
        const Snapshot s = passcast::testing::random_snapshot(rng);
        const auto low = extract(s, FeatureLevel::Low, kField).values;
        const auto mid = extract(s, FeatureLevel::Mid, kField).values;
        const auto high = extract(s, FeatureLevel::High, kField).values;
        EXPECT_TRUE(std::equal(low.begin(), low.end(), mid.begin()));
        EXPECT_TRUE(std::equal(mid.begin(), mid.end(), high.begin()));
    }
}

TEST(Features, CentreLandmarkDistanceIsZero) {
    Rng rng(7);
    Snapshot s = passcast::testing::random_snapshot(rng);
    s.ball_pos = {0, 0};
    const auto f = extract(s, FeatureLevel::Mid, kField).values;
    EXPECT_EQ(f[92 + 2], 0.0);       // distance to the third landmark
    EXPECT_EQ(f[92 + 9 + 2], 0.0);   // coincident angle convention
    EXPECT_NEAR(f[92 + 1], 52.5 / 130, 1e-15);
}

TEST(Features, MirrorTwiceGivesSameFeatures) {
    Rng rng(8);
    for (int i = 0; i < 50; ++i) {
        Snapshot s = passcast::testing::random_snapshot(rng);
        if (i == 0) {
            s.ball_pos = {0, 0};
            s.ball_vel = {0, 0};
        }
        EXPECT_EQ(extract(mirror(mirror(s)), FeatureLevel::High, kField).values,
                  extract(s, FeatureLevel::High, kField).values);
    }
}

TEST(Features, ValuesStayInsideClipRange) {
    Rng rng(9);
    for (int i = 0; i < 500; ++i) {
        Snapshot s = passcast::testing::random_snapshot(rng);
        if (i % 5 == 0) {
            // Extreme but legal corners of the state space.
            s.ball_pos = {60, -40};
            s.ball_vel = {9, -9};
            s.players[0].pos = {-60, 40};
            s.players[1].vel = {5, 5};
        }
        for (double v : extract(s, FeatureLevel::High, kField).values) {
            ASSERT_TRUE(std::isfinite(v));
            ASSERT_LE(std::abs(v), 1.5);
        }
    }
}

TEST(Features, WrongBufferSizeThrows) {
    Rng rng(10);
    const Snapshot s = passcast::testing::random_snapshot(rng);
    std::vector<double> buf(100);
    EXPECT_THROW(extract_into(s, FeatureLevel::Mid, kField, buf), DimensionMismatch);
}

TEST(FreeAngle, Examples) {
    std::vector<Vec2> opps(11, Vec2{-40, 30});
    EXPECT_EQ(free_angle({0, 0}, {10, 0}, opps), 180.0);

    opps[4] = {5, 0};
    EXPECT_EQ(free_angle({0, 0}, {10, 0}, opps), 0.0);

    opps[4] = {5, 5};
    EXPECT_NEAR(free_angle({0, 0}, {10, 0}, opps), 45.0, 1e-12);
    EXPECT_NEAR(passcast::testing::reference_free_angle({0, 0}, {10, 0}, opps), 45.0, 1e-12);

    // Exactly as far as the teammate still qualifies.
    opps[4] = {0, -10};
    EXPECT_NEAR(free_angle({0, 0}, {10, 0}, opps), 90.0, 1e-12);
    opps[4] = {0, -10.000001};
    EXPECT_EQ(free_angle({0, 0}, {10, 0}, opps), 180.0);
}

TEST(FreeAngle, CoincidenceConventions) {
    std::vector<Vec2> opps(11, Vec2{-40, 30});
    opps[0] = {1, 1};
    EXPECT_EQ(free_angle({1, 1}, {10, 0}, opps), 0.0);
    EXPECT_EQ(free_angle({3, 3}, {3, 3}, opps), 180.0);
}

TEST(FreeAngle, TranslationInvariant) {
    Rng rng(11);
    int compared = 0;
    for (int i = 0; i < 2000; ++i) {
        const Vec2 ball{rng.uniform(-30, 30), rng.uniform(-20, 20)};
        const Vec2 mate{rng.uniform(-30, 30), rng.uniform(-20, 20)};
        std::vector<Vec2> opps;
        for (int k = 0; k < 11; ++k) opps.push_back({rng.uniform(-30, 30), rng.uniform(-20, 20)});
        const double reach = dist(ball, mate);
        const bool near_boundary = std::any_of(opps.begin(), opps.end(), [&](Vec2 o) {
            return std::abs(dist(ball, o) - reach) < 1e-6;
        });
        if (near_boundary) continue;
        const Vec2 delta{rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5)};
        std::vector<Vec2> moved;
        for (Vec2 o : opps) moved.push_back(o + delta);
        EXPECT_NEAR(free_angle(ball + delta, mate + delta, moved), free_angle(ball, mate, opps), 1e-9);
        ++compared;
    }
    EXPECT_GT(compared, 1900);
}

TEST(MinDist, Examples) {
    const std::vector<Vec2> one{{3, 4}};
    EXPECT_EQ(min_dist_to_group({0, 0}, one), 5.0);
    const std::vector<Vec2> two{{1, 0}, {0, 2}};
    EXPECT_EQ(min_dist_to_group({0, 0}, two), 1.0);
    EXPECT_THROW(min_dist_to_group({0, 0}, std::span<const Vec2>{}), EmptyGroup);
}

TEST(MinDist, TeammateFeatureExcludesSelf) {
    Rng rng(12);
    Snapshot s = passcast::testing::random_snapshot(rng);
    // Two teammates 2 m apart, everyone else far away from both.
    for (int u = 1; u <= 11; ++u) s.player(Side::Left, u).pos = {-50.0 + 9.0 * (u - 1), 30};
    s.player(Side::Left, 4).pos = {0, 0};
    s.player(Side::Left, 5).pos = {2, 0};
    const auto f = extract(s, FeatureLevel::High, kField).values;
    EXPECT_NEAR(f[363 + 3], 2.0 / 130, 1e-15);
    EXPECT_NEAR(f[363 + 4], 2.0 / 130, 1e-15);
    EXPECT_NEAR(f[363 + 0], 9.0 / 130, 1e-12);
}
