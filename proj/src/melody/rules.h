// Note-by-note decisions for the main part: pitch and length selection under
// the melodic constraints.

#pragma once

#include <optional>
#include <vector>

#include "core/model.h"
#include "core/random.h"
#include "distributions/intervals.h"
#include "distributions/tables.h"
#include "melody/context.h"

namespace tunesmith {

/// Records a pitch as played: updates contour, direction and the unstable run.
void commit_pitch(LocalContext& ctx, int pitch, const Scale& scale);

/// True when `pitch` may follow the committed history without breaking the
/// unstable-run, long-jump or landing rules.
bool satisfies_rules(const LocalContext& ctx, int pitch, const Scale& scale);

/// Adjusts an in-scale candidate so it satisfies the rules, in this order:
///  - after a jump wider than 7 semitones the note is the adjacent scale tone
///    in the opposite direction (this overrides the candidate);
///  - the candidate is folded into the melody range;
///  - after two unstable tones the candidate moves to the nearest stable tone
///    in its direction of travel;
///  - a jump wider than 7 semitones must land on a stable tone, otherwise the
///    candidate moves to the nearest stable tone back toward the previous one.
int conform_pitch(int candidate, const LocalContext& ctx, const Scale& scale);

struct PitchDecision {
  Pitch pitch;
  bool dissonant = false;
};

/// Chooses and commits the next pitch.
///
/// Off strong beats, with probability dissonance_percent (doubled when the
/// context allows extra dissonance) a dissonant leap of ±6, ±10 or ±11
/// semitones is taken and every consonance rule is skipped. Otherwise an
/// active special sequence supplies the candidate, or the interval is drawn
/// from the interval/skip tables with a contour-driven direction. The
/// candidate then goes through conform_pitch. With no history the melody
/// starts on the tonic in the middle octave.
PitchDecision next_pitch(LocalContext& ctx, const Scale& scale, const GenerationTables& tables,
                         const MelodySettings& settings, RandomSource& rng,
                         bool strong_beat = false);

/// Up/down draw: 50/50, or 70/30 toward reversal after four monotone notes.
Direction choose_direction(const LocalContext& ctx, RandomSource& rng);

/// Descending perfect fifths from `start`, folded up an octave below the
/// melody floor and snapped into the scale. The first element is `start`.
std::vector<int> circle_of_fifths_sequence(int start, int count, const Scale& scale);

/// Tones of the tonic, subdominant or dominant-seventh chord (chosen by rng)
/// ascending from the chord root nearest `near`.
std::vector<int> expanded_chord_sequence(int near, const Scale& scale, RandomSource& rng);

struct LengthDecision {
  NoteLength kind = NoteLength::Quarter;  // nearest kind to `duration`
  Tick duration = kPpq;
  bool syncopated = false;
};

/// Chooses the next note length. `to_next_downbeat` is the distance to the
/// next downbeat strictly inside the measure, if any.
///
///  (a) a sampled kind more than two positions from `prev` is resampled (up to
///      8 times) and then clamped to prev ± 2;
///  (b) a length longer than the room left in the measure is trimmed to fit;
///  (c) a note crossing a downbeat is truncated there unless the syncopation
///      draw fires (doubled when the context allows extra syncopation).
LengthDecision next_length(const LocalContext& ctx, Tick remaining_in_measure,
                           std::optional<Tick> to_next_downbeat,
                           std::optional<NoteLength> prev, const GenerationTables& tables,
                           const MelodySettings& settings, RandomSource& rng);

/// Distance from `position` (ticks from a barline-aligned origin) to the next
/// downbeat inside the same measure, if any.
std::optional<Tick> ticks_to_next_downbeat(const Meter& meter, Tick position);

bool on_downbeat(const Meter& meter, Tick position);

/// Reference tonic pitch of the melody (tonic in [kMelodyLow, kMelodyLow + 12)).
int melody_tonic(const Scale& scale);

/// Fills [start, end) with freshly chosen notes, continuing from `ctx`.
/// Positions are relative to a barline. Velocities follow the context's
/// dynamics level with ±10% jitter; ornamentation adds articulation marks.
std::vector<Note> fill_span(LocalContext& ctx, Tick start, Tick end, const Meter& meter,
                            const Scale& scale, const GenerationTables& tables,
                            const MelodySettings& settings, RandomSource& rng);

}  // namespace tunesmith
