// Corpus analysis: melody extraction from MIDI files and the interval,
// skip and length histograms that become probability tables.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "distributions/tables.h"
#include "midi/smf.h"

namespace tunesmith {

struct MelodyNote {
  int pitch = 60;
  Tick duration = 0;
  friend bool operator==(const MelodyNote&, const MelodyNote&) = default;
};

inline constexpr size_t kMinMelodyNotes = 8;

/// Skyline of the melodic track: among tracks with at least 8 notes off the
/// percussion channel, the one with the highest mean pitch; at each onset
/// only the highest note is kept. Empty when no track qualifies.
std::vector<MelodyNote> extract_melody(const SmfFile& file);

/// Class of an absolute interval in the interval table: 0 Unison, 1-2 Step,
/// 3-11 Skip, 12 Octave; nullopt above an octave.
std::optional<std::string> interval_class(int semitones);

/// Skip class: 3-4 Third, 5-6 PerfectFourth, 7 PerfectFifth, 8-11 Sixth.
std::optional<std::string> skip_class(int semitones);

struct IntervalCounts {
  // Same label order as the generation tables.
  std::array<long, 4> interval{};  // Unison, Octave, Step, Skip
  std::array<long, 4> skip{};      // PerfectFifth, PerfectFourth, Third, Sixth
  std::array<long, 13> semitones{};  // raw counts by absolute size 0..12
  long discarded = 0;                // intervals wider than an octave

  IntervalCounts& operator+=(const IntervalCounts& other);
};

struct LengthCounts {
  std::array<long, 6> length{};  // Sixteenth .. Whole
  LengthCounts& operator+=(const LengthCounts& other);
};

IntervalCounts interval_histogram(const std::vector<MelodyNote>& melody);

/// Durations snapped to the nearest note length at the given resolution.
LengthCounts length_histogram(const std::vector<MelodyNote>& melody, int ppq);

/// Integer percentages summing to 100: floors first, then the remaining
/// points to the largest remainders, ties going to the earlier entry. An
/// all-zero input is treated as uniform.
std::vector<int> largest_remainder_percentages(const std::vector<long>& counts);

ProbabilityTable interval_table(const IntervalCounts& counts);
ProbabilityTable skip_table(const IntervalCounts& counts);
ProbabilityTable length_table(const LengthCounts& counts);

struct CorpusStats {
  int file_count = 0;
  long note_count = 0;
  IntervalCounts intervals;
  LengthCounts lengths;
  std::vector<std::string> warnings;

  ProbabilityTable interval_table() const { return tunesmith::interval_table(intervals); }
  ProbabilityTable skip_table() const { return tunesmith::skip_table(intervals); }
  ProbabilityTable length_table() const { return tunesmith::length_table(lengths); }
};

/// Analyzes every file; unreadable files and files without a melody are
/// skipped with a warning. Throws std::runtime_error when nothing usable is
/// left.
CorpusStats analyze_corpus(const std::vector<std::string>& paths);

/// The .mid/.midi files directly inside `dir`, sorted by name.
std::vector<std::string> list_midi_files(const std::string& dir);

std::string stats_to_json(const CorpusStats& stats, int indent = 2);

}  // namespace tunesmith
