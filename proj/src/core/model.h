// Domain vocabulary: pitches, note lengths, scales, meters, notes, parts and
// pieces. Everything here is a plain value type.

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tunesmith {

using Tick = int64_t;

inline constexpr int kPpq = 480;
inline constexpr Tick kWholeTicks = 4 * kPpq;

// ---------------------------------------------------------------------------
// Pitch
// ---------------------------------------------------------------------------

/// MIDI note number, 60 = middle C.
struct Pitch {
  int midi = 60;

  constexpr Pitch() = default;
  constexpr explicit Pitch(int m) : midi(m) {}

  constexpr int pitch_class() const { return ((midi % 12) + 12) % 12; }
  constexpr bool valid() const { return midi >= 0 && midi <= 127; }

  friend constexpr bool operator==(Pitch a, Pitch b) = default;
  friend constexpr auto operator<=>(Pitch a, Pitch b) = default;
};

/// Throws std::invalid_argument when outside 0..127.
Pitch make_pitch(int midi);

// ---------------------------------------------------------------------------
// Note lengths
// ---------------------------------------------------------------------------

enum class NoteLength { Sixteenth, Eighth, Quarter, DottedQuarter, Half, Whole };

inline constexpr std::array<NoteLength, 6> kAllNoteLengths = {
    NoteLength::Sixteenth, NoteLength::Eighth, NoteLength::Quarter,
    NoteLength::DottedQuarter, NoteLength::Half, NoteLength::Whole};

/// Ticks for a length at the given resolution (ppq × {1/4, 1/2, 1, 3/2, 2, 4}).
constexpr Tick ticks(NoteLength kind, int ppq = kPpq) {
  switch (kind) {
    case NoteLength::Sixteenth: return ppq / 4;
    case NoteLength::Eighth: return ppq / 2;
    case NoteLength::Quarter: return ppq;
    case NoteLength::DottedQuarter: return ppq * 3 / 2;
    case NoteLength::Half: return ppq * 2;
    case NoteLength::Whole: return ppq * 4;
  }
  return ppq;
}

/// Position of the kind in the ordered list (Sixteenth = 0 … Whole = 5).
constexpr int length_position(NoteLength kind) { return static_cast<int>(kind); }

/// Nearest kind by absolute tick distance; ties resolve to the shorter kind.
NoteLength nearest_length(Tick duration, int ppq = kPpq);

std::string_view to_string(NoteLength kind);

// ---------------------------------------------------------------------------
// Notes
// ---------------------------------------------------------------------------

enum class Articulation { Normal, Staccato, Tenuto };

/// A timed event of a part. A note without pitch is a rest.
struct Note {
  std::optional<Pitch> pitch;
  Tick onset = 0;
  Tick duration = kPpq;
  int velocity = 80;
  Articulation articulation = Articulation::Normal;

  bool is_rest() const { return !pitch.has_value(); }
  Tick end() const { return onset + duration; }

  static Note rest(Tick onset, Tick duration) {
    Note n;
    n.onset = onset;
    n.duration = duration;
    n.velocity = 0;
    return n;
  }

  friend bool operator==(const Note&, const Note&) = default;
};

// ---------------------------------------------------------------------------
// Scales
// ---------------------------------------------------------------------------

enum class Mode { Major, NaturalMinor, Lydian, Dorian, Phrygian, Mixolydian };

inline constexpr std::array<Mode, 6> kAllModes = {Mode::Major,  Mode::NaturalMinor,
                                                   Mode::Lydian, Mode::Dorian,
                                                   Mode::Phrygian, Mode::Mixolydian};

struct Scale {
  int tonic = 0;  // pitch class 0..11
  Mode mode = Mode::Major;

  friend bool operator==(const Scale&, const Scale&) = default;
};

/// Semitone offsets of degrees 1..7 above the tonic.
const std::array<int, 7>& mode_intervals(Mode mode);

/// The 7 pitch classes of the scale, in degree order starting at the tonic.
std::array<int, 7> pitch_classes(const Scale& scale);

bool in_scale(int pitch_class, const Scale& scale);
inline bool in_scale(Pitch p, const Scale& scale) { return in_scale(p.pitch_class(), scale); }

/// Scale degree 1..7, or nullopt when the pitch class is not diatonic.
std::optional<int> degree_of(Pitch pitch, const Scale& scale);

/// Tonic-triad membership (degrees 1, 3, 5). Chromatic pitches are unstable.
bool is_stable(Pitch pitch, const Scale& scale);

inline constexpr std::array<int, 3> kStableDegrees = {1, 3, 5};

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

std::string tonic_name(int pitch_class);
std::optional<int> parse_tonic(std::string_view text);

/// "C:major", "F#:dorian", ...
std::string to_string(const Scale& scale);
std::optional<Scale> parse_scale(std::string_view text);

// ---------------------------------------------------------------------------
// Meters
// ---------------------------------------------------------------------------

enum class MeterKind { Simple, Compound };

struct Meter {
  int numerator = 4;
  int denominator = 4;
  MeterKind kind = MeterKind::Compound;
  std::vector<Tick> downbeats{0, 2 * kPpq};

  Tick measure_ticks() const { return numerator * (kWholeTicks / denominator); }

  friend bool operator==(const Meter&, const Meter&) = default;
};

/// Builds a meter with the standard downbeat layout:
/// 2/4, 3/4 → {0}; 4/4 → {0, half}; 6/8 → {0, dotted quarter};
/// 5/8 → 3+2 eighths; 7/8 → 3+2+2 eighths. Other numerators fall back to
/// groups of 2 (x/4) or 3 (x/8) beats.
Meter make_meter(int numerator, int denominator);

/// "4/4"
std::string to_string(const Meter& meter);
std::optional<Meter> parse_meter(std::string_view text);

/// Playing time in seconds for a tempo given in quarter notes per minute.
double duration_seconds(int tempo_bpm, const Meter& meter, int measure_count);

// ---------------------------------------------------------------------------
// Parts and pieces
// ---------------------------------------------------------------------------

enum class PartKind {
  Main,
  Accompaniment,
  Arpeggio,
  Bass,
  Pads,
  Drone,
  Percussion,
  SimpleBeat,
  Timpani,
  Effects
};

inline constexpr std::array<PartKind, 10> kAllPartKinds = {
    PartKind::Main,  PartKind::Accompaniment, PartKind::Arpeggio, PartKind::Bass,
    PartKind::Pads,  PartKind::Drone,         PartKind::Percussion, PartKind::SimpleBeat,
    PartKind::Timpani, PartKind::Effects};

std::string_view to_string(PartKind kind);
std::optional<PartKind> parse_part_kind(std::string_view text);

/// Parts rendered on the General-MIDI percussion channel.
bool uses_percussion_channel(PartKind kind);

/// Parts written as one line of notes and rests that tiles every measure:
/// Main, Arpeggio, Bass and Drone.
bool is_measured_part(PartKind kind);

struct ProgramChange {
  Tick tick = 0;
  int program = 0;
  friend bool operator==(const ProgramChange&, const ProgramChange&) = default;
};

struct Part {
  PartKind kind = PartKind::Main;
  int instrument = 0;  // GM program; ignored on the percussion channel
  std::vector<Note> notes;
  /// Additional timed program changes after the initial one.
  std::vector<ProgramChange> program_changes;

  bool percussion() const { return uses_percussion_channel(kind); }
  Tick end_tick() const;
};

struct Piece {
  std::string id;
  uint64_t seed = 0;
  std::string title;
  Scale scale;
  Meter meter;
  int tempo_bpm = 120;
  int measure_count = 1;
  std::vector<Part> parts;

  Tick total_ticks() const { return meter.measure_ticks() * measure_count; }
  double duration_seconds() const;

  const Part* find(PartKind kind) const;
  Part* find(PartKind kind);
  const Part& main() const;
};

/// Throws std::invalid_argument naming the first violated invariant.
void check_piece_invariants(const Piece& piece);

}  // namespace tunesmith
