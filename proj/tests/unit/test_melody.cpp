#include <gtest/gtest.h>

#include "configurers/configurers.h"
#include "melody/melody.h"
#include "melody/rules.h"
#include "melody/variations.h"

using namespace tunesmith;

namespace {

Motif motif_of(std::vector<int> pitches) {
  Motif m;
  Tick t = 0;
  for (int p : pitches) {
    Note n;
    n.pitch = Pitch(p);
    n.onset = t;
    n.duration = kPpq;
    m.notes.push_back(n);
    t += kPpq;
  }
  return m;
}

std::vector<int> pitches_of(const Motif& m) {
  std::vector<int> out;
  for (const auto& n : m.notes) out.push_back(n.pitch ? n.pitch->midi : -1);
  return out;
}

}  // namespace

TEST(Rules, CircleOfFifths) {
  EXPECT_EQ(circle_of_fifths_sequence(67, 3, Scale{0, Mode::Major}), (std::vector<int>{67, 60, 65}));
}

TEST(Variations, TransposeByDegree) {
  const Scale c{0, Mode::Major};
  EXPECT_EQ(pitches_of(transpose_motif(motif_of({60, 64, 67}), 1, c)), (std::vector<int>{62, 65, 69}));
}

TEST(Variations, RetrogradeReversesPitches) {
  EXPECT_EQ(pitches_of(retrograde_motif(motif_of({60, 62, 64}))), (std::vector<int>{64, 62, 60}));
}

TEST(Variations, EveryKindKeepsDuration) {
  const Scale c{0, Mode::Major};
  const Meter m = make_meter(4, 4);
  const auto tables = builtin_tables();
  MelodySettings settings;
  const VariationEnv env{c, m, tables, settings, 80};
  Motif motif = motif_of({60, 62, 64, 65});
  RandomSource rng(3);
  for (VariationKind k : kAllVariations) {
    EXPECT_EQ(motif_duration(apply_variation(motif, k, env, rng)), motif_duration(motif)) << to_string(k);
  }
}

TEST(Melody, MainPartTilesAndEndsOnTonic) {
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    PieceConfig config;
    config.scale = Scale{static_cast<int>(seed % 12), kAllModes[seed % kAllModes.size()]};
    config.meter = make_meter(3, 4);
    RandomSource rng(seed);
    const Part main = generate_main_part(config, builtin_tables(), rng);
    Tick cursor = 0;
    for (const auto& n : main.notes) {
      EXPECT_EQ(n.onset, cursor);
      cursor = n.end();
    }
    EXPECT_EQ(cursor, config.meter.measure_ticks() * config.measure_count);
    const Note* last = nullptr;
    for (const auto& n : main.notes) {
      if (n.pitch) last = &n;
    }
    ASSERT_NE(last, nullptr);
    EXPECT_EQ(last->pitch->pitch_class(), config.scale.tonic);
  }
}

TEST(Configurers, MeasureRangeFitsBounds) {
  const auto r = measure_count_range(make_meter(4, 4), 120);
  EXPECT_EQ(r.min, 30);
  EXPECT_EQ(r.max, 150);
  EXPECT_THROW(measure_count_range(make_meter(4, 4), 20), std::invalid_argument);
}

TEST(Configurers, TitleUsesWordLists) {
  WordLists words{{"Bright"}, {"Gloomy"}, {"Harbor"}};
  RandomSource rng(1);
  EXPECT_EQ(generate_title(Scale{0, Mode::Major}, rng, words), "Bright Harbor");
  EXPECT_EQ(generate_title(Scale{0, Mode::Phrygian}, rng, words), "Gloomy Harbor");
}

TEST(Configurers, PartsAlwaysIncludeMain) {
  RandomSource rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto parts = configure_parts(rng);
    ASSERT_FALSE(parts.empty());
    EXPECT_EQ(parts.front(), PartKind::Main);
    const bool both = std::count(parts.begin(), parts.end(), PartKind::Accompaniment) &&
                      std::count(parts.begin(), parts.end(), PartKind::Arpeggio);
    EXPECT_FALSE(both);
  }
}
