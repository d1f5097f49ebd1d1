#include <gtest/gtest.h>

#include "engine/engine.h"

using namespace tunesmith;

TEST(Engine, Deterministic) {
  ComposeRequest r;
  r.seed = 123;
  EXPECT_EQ(metadata_json(compose(r)), metadata_json(compose(r)));
}

TEST(Engine, OverridesRespected) {
  ComposeRequest r;
  r.seed = 5;
  r.scale = Scale{9, Mode::Dorian};
  r.meter = make_meter(5, 8);
  r.tempo_bpm = 100;
  r.parts = std::vector<PartKind>{PartKind::Bass};
  const auto c = compose(r);
  EXPECT_EQ(c.piece.scale, *r.scale);
  EXPECT_EQ(c.piece.meter, *r.meter);
  EXPECT_EQ(c.piece.tempo_bpm, 100);
  ASSERT_EQ(c.piece.parts.size(), 2u);
  EXPECT_EQ(c.piece.parts[0].kind, PartKind::Main);
  EXPECT_EQ(c.piece.parts[1].kind, PartKind::Bass);
  EXPECT_EQ(c.piece.id, "5");
}

TEST(Engine, OverrideDoesNotShiftOtherDraws) {
  ComposeRequest a;
  a.seed = 99;
  const auto base = configure(a);
  ComposeRequest b = a;
  b.title = "Fixed";
  const auto fixed = configure(b);
  EXPECT_EQ(fixed.scale, base.scale);
  EXPECT_EQ(fixed.measure_count, base.measure_count);
  EXPECT_EQ(fixed.title, "Fixed");
}

TEST(Engine, MeasureOverrideOutOfRange) {
  ComposeRequest r;
  r.seed = 1;
  r.tempo_bpm = 120;
  r.meter = make_meter(4, 4);
  r.measure_count = 10;
  EXPECT_THROW(configure(r), std::invalid_argument);
}

TEST(Engine, DefaultPieceIsClean) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    ComposeRequest r;
    r.seed = seed;
    const auto c = compose(r);
    EXPECT_TRUE(c.report.unbalanced_measures.empty()) << seed;
  }
}
