#include <gtest/gtest.h>

#include <set>

#include "parts/aux_parts.h"

using namespace tunesmith;

namespace {

Piece base_piece(int num, int den, int measures) {
  Piece p;
  p.id = "1";
  p.scale = Scale{2, Mode::Major};
  p.meter = make_meter(num, den);
  p.measure_count = measures;
  Part main;
  for (int m = 0; m < measures; ++m) {
    Note n;
    n.pitch = Pitch(62);
    n.onset = m * p.meter.measure_ticks();
    n.duration = p.meter.measure_ticks();
    main.notes.push_back(n);
  }
  p.parts.push_back(main);
  return p;
}

}  // namespace

TEST(AuxParts, SimpleBeatFourFour) {
  const Piece p = base_piece(4, 4, 32);
  RandomSource rng(1);
  const Part beat = generate_simple_beat(p, rng);
  EXPECT_EQ(beat.notes.size(), 64u);
  EXPECT_EQ(beat.notes[0].pitch->midi, gm::kKick);
  EXPECT_EQ(beat.notes[1].pitch->midi, gm::kSnare);
}

TEST(AuxParts, DroneHoldsTonic) {
  const Piece p = base_piece(3, 4, 8);
  RandomSource rng(1);
  const Part drone = generate_drone(p, rng);
  EXPECT_EQ(drone.instrument, gm::kCello);
  for (const auto& n : drone.notes) EXPECT_EQ(n.pitch->midi, 50);
  EXPECT_EQ(drone.notes.back().end(), p.total_ticks());
}

TEST(AuxParts, BassOnDownbeats) {
  const Piece p = base_piece(4, 4, 16);
  RandomSource rng(4);
  const Part bass = generate_bass(p, rng);
  EXPECT_EQ(bass.notes.size(), 32u);
  Tick cursor = 0;
  for (const auto& n : bass.notes) {
    EXPECT_EQ(n.onset, cursor);
    EXPECT_TRUE(in_scale(*n.pitch, p.scale));
    cursor = n.end();
  }
}

TEST(AuxParts, TimpaniStaysInsideMeasures) {
  const Piece p = base_piece(4, 4, 40);
  RandomSource rng(8);
  const Part t = generate_timpani(p, rng);
  std::set<int> measures;
  for (const auto& n : t.notes) {
    const Tick m = n.onset / 1920;
    EXPECT_LE(n.end(), (m + 1) * 1920);
    measures.insert(static_cast<int>(m));
    EXPECT_TRUE(n.pitch->pitch_class() == 2 || n.pitch->pitch_class() == 9);
  }
  EXPECT_GE(measures.size(), 1u);
  EXPECT_LE(measures.size(), 4u);
}

TEST(AuxParts, PercussionPatternSlots) {
  RandomSource rng(2);
  const auto pattern = sample_percussion_pattern(make_meter(6, 8), rng);
  EXPECT_EQ(pattern.slots.size(), 6u);
  for (const auto& s : pattern.slots) EXPECT_EQ(s.offset % 240, 0);
}

TEST(AuxParts, EffectsWithinPiece) {
  const Piece p = base_piece(4, 4, 32);
  for (uint64_t seed = 0; seed < 20; ++seed) {
    RandomSource rng(seed);
    const Part fx = generate_effects(p, rng);
    EXPECT_LE(fx.notes.size(), 4u);
    for (const auto& n : fx.notes) EXPECT_LE(n.end(), p.total_ticks());
  }
}
