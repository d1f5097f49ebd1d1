// Accompaniment: one diatonic triad per measure that contains the main-part
// note sounding at the bar line, optionally arpeggiated.

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "configurers/configurers.h"
#include "core/model.h"
#include "core/random.h"

namespace tunesmith {

enum class ChordQuality { Major, Minor, Diminished };

struct Chord {
  int root_degree = 1;  // 1..7
  ChordQuality quality = ChordQuality::Major;
  int inversion = 0;  // 0..2
  std::array<Pitch, 3> pitches{};

  friend bool operator==(const Chord&, const Chord&) = default;
};

enum class ArpeggioPattern { Up, Down, UpDown };

inline constexpr std::array<int, 3> kStableChordDegrees = {1, 4, 5};

bool is_stable_chord(int root_degree);

/// Quality of the diatonic triad on a degree of the scale.
ChordQuality triad_quality(int root_degree, const Scale& scale);

/// Root-position triad on `root_degree` with its root nearest `root_near`.
Chord make_triad(int root_degree, const Scale& scale, int root_near);

/// Degrees whose triad contains the pitch class (always three for a diatonic
/// pitch class).
std::vector<int> triads_containing(int pitch_class, const Scale& scale);

/// Picks a triad containing the main pitch (snapped into the scale first).
/// Stable triads (I, IV, V) weigh 3, others 1; after an unstable chord only
/// stable triads qualify. One draw for the triad, one for the inversion.
/// The root is placed nearest `root_near`.
Chord choose_chord(Pitch current_main_pitch, const std::optional<Chord>& prev, const Scale& scale,
                   RandomSource& rng, int root_near = 48);

/// Rotates the voicing `inversion` times, raising the lowest note an octave
/// each time.
Chord invert_chord(const Chord& chord, int inversion);

/// Equal notes cycling through the chord tones to fill one measure: eighths,
/// or sixteenths in 5/8 and 7/8. Onsets are relative to the measure.
std::vector<Note> arpeggiate(const Chord& chord, const Meter& meter, ArpeggioPattern pattern,
                             int velocity = 64);

/// Main pitch used to harmonize a measure: the pitched note sounding at the
/// bar line, else the first in-scale pitched note in the measure, else the
/// previous choice (tonic at the start).
Pitch harmonizing_pitch(const Part& main, const Scale& scale, Tick measure_start,
                        Tick measure_ticks, std::optional<Pitch> fallback);

/// One chord per measure following the main part.
std::vector<Chord> plan_chords(const Part& main, const PieceConfig& config, RandomSource& rng);

/// The accompaniment (block chords) or arpeggio part, depending on
/// `arpeggiated`. The arpeggio pattern is drawn once per piece, after the
/// chord plan.
Part generate_accompaniment(const Part& main, const PieceConfig& config, RandomSource& rng,
                            bool arpeggiated = false);

/// Median pitch of the pitched notes (60 when none).
int median_pitch(const Part& part);

/// Rounded mean velocity of pitched notes (80 when none).
int mean_velocity(const Part& part);

}  // namespace tunesmith
