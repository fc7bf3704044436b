#include <gtest/gtest.h>

#include "ggm/serialization.hpp"
#include "ggm/transfer.hpp"
#include "ggm/volume.hpp"

using namespace ggm;

TEST(Volume, BallShape)
{
    auto v = FiniteTreeVolume::ball(2, 2);
    EXPECT_EQ(v.size(), 10);
    EXPECT_EQ(v.edge_count(), 9);
    EXPECT_EQ(v.boundary().size(), 6u);
    EXPECT_EQ(v.inner().size(), 4u);
    EXPECT_EQ(v.degree(0), 3);
    for (int u : v.inner()) {
        EXPECT_EQ(v.degree(u), 3);
    }
    EXPECT_EQ(FiniteTreeVolume::ball(3, 1).size(), 5);
}

TEST(Volume, PathAndStar)
{
    auto p = FiniteTreeVolume::path(2, 4);
    EXPECT_EQ(p.edge_count(), 4);
    EXPECT_EQ(p.distance(0, 4), 4);
    EXPECT_EQ(p.boundary(), (std::vector<int>{0, 4}));
    auto s = FiniteTreeVolume::star(3);
    EXPECT_EQ(s.edge_count(), 4);
    EXPECT_EQ(s.inner(), (std::vector<int>{0}));
}

TEST(Volume, Growth)
{
    auto v = FiniteTreeVolume::ball(2, 1);
    auto g = v.grown(1);
    EXPECT_EQ(g.size(), 6);
    EXPECT_EQ(g.parent(4), 1);
    EXPECT_EQ(g.parent(5), 1);
    EXPECT_EQ(g.degree(1), 3);
    EXPECT_THROW(v.grown(0), Error);
}

TEST(Volume, RejectsBadParents)
{
    EXPECT_THROW(FiniteTreeVolume(2, {-1, 2, 0}), Error);
    EXPECT_THROW(FiniteTreeVolume(1, {-1, 0, 0, 0}), Error);
}

TEST(Volume, HeightsAndSubVolume)
{
    auto v = FiniteTreeVolume::ball(2, 2);
    GradientConfiguration z{{1, -2, 0, 3, 1, 0, 0, 0, 0}};
    auto h = heights(v, z);
    EXPECT_EQ(h[1], 1);
    ASSERT_EQ(v.parent(4), 1);
    EXPECT_EQ(h[4], 4);
    EXPECT_EQ(h[2], -2);
    auto sub = sub_volume(v, {1, 0, 4, 5});
    EXPECT_EQ(sub.volume.size(), 4);
    EXPECT_EQ(sub.host_vertex.front(), 0);
    EXPECT_THROW(sub_volume(v, {4, 5}), Error);
}

TEST(Serialization, RoundTrip)
{
    auto cfg = parse_model_text(R"({"potential": {"kind": "sos", "beta": 2.0}, "q": 2, "d": 3,
                                    "boundary_law": [1, 5.5], "branch": "upper"})");
    EXPECT_EQ(cfg.d, 3);
    EXPECT_EQ(cfg.op.kind(), PotentialKind::sos);
    auto again = parse_model(to_json(cfg));
    EXPECT_EQ(to_json(again), to_json(cfg));
}

TEST(Serialization, LiftedAndTableKinds)
{
    auto lifted = parse_model_text(R"({"potential": {"kind": "lifted_potts", "q": 5, "beta_tilde": 1.0}})");
    EXPECT_EQ(lifted.q, 5);
    EXPECT_EQ(lifted.op(3), 0.0);
    auto pos = parse_model_text(R"({"potential": {"kind": "lifted_potts", "q": 3, "beta_tilde": 1.0, "tail_beta": 10}})");
    EXPECT_EQ(pos.op.kind(), PotentialKind::lifted_potts_positive);
    auto table = parse_model_text(R"({"potential": {"kind": "table", "weights": {"0": 1, "1": 0.5}, "tail": 1.0}})");
    EXPECT_NEAR(table.op(3), 0.5 * std::exp(-2.0), 1e-16);
    EXPECT_EQ(to_json(parse_model(to_json(table))), to_json(table));
}

TEST(Serialization, ErrorsNameTheField)
{
    auto message = [](const std::string& text) {
        try {
            parse_model_text(text);
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::config);
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(message(R"({"potential": {"kind": "sos"}})").find("potential.beta"), std::string::npos);
    EXPECT_NE(message(R"({"potential": {"kind": "sos", "beta": -1}})").find("potential"), std::string::npos);
    EXPECT_NE(message(R"({"potential": {"kind": "nope"}})").find("potential.kind"), std::string::npos);
    EXPECT_NE(message(R"({"potential": {"kind": "sos", "beta": 1}, "q": 2, "boundary_law": [1]})").find("boundary_law"),
              std::string::npos);
    EXPECT_NE(message("{\n \"potential\": {,\n}").find("line 2"), std::string::npos);
}
