// Pre-generation manipulators. They run in a fixed order (parts, scale,
// meter, tempo, length, title) and each consumes draws from the same
// configuration stream.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "core/model.h"
#include "core/random.h"
#include "distributions/tables.h"

namespace tunesmith {

/// Inclusion probability (percent) of every optional part kind, indexed by
/// PartKind. Main is always included regardless of its entry.
struct PartProbabilities {
  std::array<int, kAllPartKinds.size()> percent = {100, 50, 20, 30, 25, 10, 30, 25, 10, 10};

  int& operator[](PartKind kind) { return percent[static_cast<size_t>(kind)]; }
  int operator[](PartKind kind) const { return percent[static_cast<size_t>(kind)]; }
};

struct PieceConfig {
  std::vector<PartKind> parts{PartKind::Main};  // kAllPartKinds order, unique
  Scale scale;
  Meter meter;
  int tempo_bpm = 120;
  int measure_count = 32;
  std::string title;
  int dissonance_percent = 5;
  int variation_percent = 40;
  int syncopation_percent = 5;
  int rest_percent = 20;
  /// Off = test mode: the melody is raw table sampling with no rules.
  bool constraints_enabled = true;
  int main_instrument = 0;

  bool has(PartKind kind) const;
  /// Throws std::invalid_argument on a broken invariant.
  void validate() const;
};

/// Sorts into kAllPartKinds order, drops duplicates and forces Main in.
std::vector<PartKind> normalize_parts(std::vector<PartKind> parts);

struct WordLists {
  std::vector<std::string> bright;
  std::vector<std::string> sad;
  std::vector<std::string> nouns;

  /// The lists shipped in data/, compiled into the library.
  static const WordLists& builtin();
  /// Reads adjectives_bright.txt, adjectives_sad.txt and nouns.txt from dir.
  static WordLists load(const std::string& dir);
};

/// One draw per optional kind in kAllPartKinds order. Accompaniment and
/// Arpeggio are exclusive: when Accompaniment is accepted the Arpeggio draw
/// is skipped.
std::vector<PartKind> configure_parts(RandomSource& rng, const PartProbabilities& odds = {});

/// Major 35, NaturalMinor 35, Lydian 8, Dorian 8, Phrygian 7, Mixolydian 7.
const ProbabilityTable& default_mode_table();

/// Mode draw first, then a uniform tonic draw.
Scale configure_scale(RandomSource& rng, const ProbabilityTable& modes = default_mode_table());

/// 4/4 40, 3/4 25, 2/4 10, 6/8 15, 5/8 5, 7/8 5.
const ProbabilityTable& default_meter_table();

Meter configure_meter(RandomSource& rng, const ProbabilityTable& meters = default_meter_table());

inline constexpr int kMinTempo = 60;
inline constexpr int kMaxTempo = 140;

/// Uniform integer in [60, 140]. The scale is accepted for interface
/// stability; no mode-dependent tempo table is applied.
int configure_tempo(const Scale& scale, RandomSource& rng);

struct MeasureRange {
  int min = 0;
  int max = 0;
};

/// Measure counts whose playing time lies in [60 s, 300 s]. Throws when the
/// tempo is outside 40..200 or no count fits.
MeasureRange measure_count_range(const Meter& meter, int tempo_bpm);

int plan_length(const Meter& meter, int tempo_bpm, RandomSource& rng);

/// "<Adjective> <Noun>"; NaturalMinor and Phrygian draw from the sad list.
std::string generate_title(const Scale& scale, RandomSource& rng,
                           const WordLists& words = WordLists::builtin());

bool is_sad_mode(Mode mode);

}  // namespace tunesmith
