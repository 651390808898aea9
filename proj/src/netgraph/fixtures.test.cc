#include "anonq/netgraph/fixtures.h"

#include <gtest/gtest.h>

#include "anonq/common/errors.h"

using namespace anonq;
using namespace anonq::netgraph;

TEST(Fixtures, RingIsADirectedCycleWithTrivialPorts) {
    auto g = ring(4);
    ASSERT_EQ(g.edges().size(), 4u);
    for (const auto &e : g.edges()) {
        EXPECT_EQ(e.dst, (e.src + 1) % 4);
        EXPECT_EQ(e.out_port, 1);
        EXPECT_EQ(e.in_port, 1);
    }
}

TEST(Fixtures, ExampleGraphsShareTheUnderlyingBidirectedSquare) {
    for (const auto &g : {example1a(), example1b()}) {
        EXPECT_EQ(g.n(), 4);
        EXPECT_EQ(g.edges().size(), 8u);
        for (int v = 0; v < 4; v++) {
            EXPECT_EQ(g.d_in(v), 2);
            EXPECT_EQ(g.d_out(v), 2);
        }
    }
}

TEST(Fixtures, EdgeLabelGameOnSymmetricNumberingIsAllDraws) {
    EXPECT_EQ(edge_label_game_scores(example1b()), (std::vector<int>{0, 0, 0, 0}));
}

TEST(Fixtures, EdgeLabelGameHasAUniqueWinnerWithOnePoint) {
    auto scores = edge_label_game_scores(example1a());
    EXPECT_EQ(scores[0], 1);
    EXPECT_EQ(std::count(scores.begin(), scores.end(), 1), 1);
    EXPECT_EQ(*std::max_element(scores.begin(), scores.end()), 1);
}

TEST(Fixtures, LookupByName) {
    EXPECT_EQ(fixture("ring(3)"), ring(3));
    EXPECT_EQ(fixture("complete(4)"), complete(4));
    EXPECT_EQ(fixture("example1b"), example1b());
    EXPECT_THROW(fixture("torus(3)"), LookupError);
}
