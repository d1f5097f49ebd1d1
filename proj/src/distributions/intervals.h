#pragma once

#include <optional>

#include "core/model.h"
#include "core/random.h"
#include "distributions/tables.h"

namespace tunesmith {

enum class IntervalKind { Unison, Octave, Step, Skip };
enum class SkipKind { PerfectFifth, PerfectFourth, Third, Sixth };
enum class Direction { Up, Down };

struct IntervalChoice {
  IntervalKind kind = IntervalKind::Step;
  std::optional<SkipKind> skip;  // present iff kind == Skip
  Direction direction = Direction::Up;

  friend bool operator==(const IntervalChoice&, const IntervalChoice&) = default;
};

IntervalKind parse_interval_kind(std::string_view label);
SkipKind parse_skip_kind(std::string_view label);

/// Draws the interval type from the interval table and, for skips, the skip
/// kind from the skip table. Direction is left as Up; callers decide it.
IntervalChoice sample_interval(const GenerationTables& tables, RandomSource& rng);

/// Signed semitone delta realizing `choice` from `from` inside `scale`.
///
/// Steps reach the adjacent scale tone; thirds and sixths pick the quality
/// (major first, then minor) that lands in the scale; fifths, fourths and
/// octaves use their fixed size and are snapped onto the scale in the chosen
/// direction when they land outside it. |delta| never exceeds 12, and the
/// direction is flipped if the result would leave MIDI range. With
/// `snap_fixed` off, fifths, fourths and octaves keep their nominal size
/// (7, 5, 12) even when that leaves the scale.
int interval_semitones(const IntervalChoice& choice, Pitch from, const Scale& scale,
                       bool snap_fixed = true);

}  // namespace tunesmith
