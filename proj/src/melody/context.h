// Decision memory carried through main-part generation.

#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "core/model.h"

namespace tunesmith {

inline constexpr int kMelodyLow = 60;
inline constexpr int kMelodyHigh = 84;
inline constexpr size_t kContourWindow = 8;

/// Jumps wider than this many semitones must be answered by a step back.
inline constexpr int kLongJump = 7;

enum class MelodicDirection { Ascending, Descending, Neutral };
enum class SpecialSequenceKind { CircleOfFifths, ExpandedChord };

struct SpecialSequence {
  SpecialSequenceKind kind = SpecialSequenceKind::CircleOfFifths;
  std::deque<int> remaining;
};

struct Motif {
  std::vector<Note> notes;  // onsets relative to the motif start
  int length_measures = 1;
};

struct LocalContext {
  MelodicDirection direction = MelodicDirection::Neutral;
  std::deque<int> contour;  // most recent committed pitches, newest last
  std::vector<Motif> previous_phrases;
  bool allow_extra_dissonance = false;
  bool allow_extra_syncopation = false;
  bool ornamentation = false;
  std::optional<SpecialSequence> special_sequence;
  int dynamics_level = 80;
  int motif_length_measures = 1;
  int unstable_run = 0;
  std::optional<NoteLength> last_length;

  std::optional<int> last() const {
    if (contour.empty()) return std::nullopt;
    return contour.back();
  }
  std::optional<int> before_last() const {
    if (contour.size() < 2) return std::nullopt;
    return contour[contour.size() - 2];
  }
};

/// Knobs for the main-part rules. Percentages are 0..100.
struct MelodySettings {
  int dissonance_percent = 5;
  int syncopation_percent = 5;
  int variation_percent = 40;
  int rest_percent = 20;
  int special_sequence_percent = 10;
  int ornament_percent = 15;
  bool constraints_enabled = true;
};

}  // namespace tunesmith
