// Standard MIDI File codec: variable-length quantities, a chunk-level writer
// and a tolerant reader. Events carry absolute ticks; deltas exist only in
// the byte stream.

#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "core/model.h"

namespace tunesmith {

using Bytes = std::vector<uint8_t>;

inline constexpr uint32_t kMaxVlq = 0x0FFFFFFF;

/// Big-endian 7-bit groups, continuation bit on all but the last byte.
/// Throws std::invalid_argument above 0x0FFFFFFF.
Bytes encode_vlq(uint32_t value);
void append_vlq(Bytes& out, uint32_t value);

/// Error raised by the reader; `offset` is the byte position of the problem.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, size_t offset);
  size_t offset() const { return offset_; }
  /// Message without the offset suffix.
  const std::string& detail() const { return detail_; }

 private:
  std::string detail_;
  size_t offset_;
};

/// Decodes a VLQ at `pos`, advancing it. Throws ParseError when truncated or
/// longer than four bytes.
uint32_t decode_vlq(std::span<const uint8_t> bytes, size_t& pos);

namespace midi {

struct NoteOn {
  int channel = 0, key = 60, velocity = 64;
  friend bool operator==(const NoteOn&, const NoteOn&) = default;
};
struct NoteOff {
  int channel = 0, key = 60, velocity = 64;
  friend bool operator==(const NoteOff&, const NoteOff&) = default;
};
struct ProgramChange {
  int channel = 0, program = 0;
  friend bool operator==(const ProgramChange&, const ProgramChange&) = default;
};
struct Tempo {
  uint32_t microseconds_per_quarter = 500000;
  friend bool operator==(const Tempo&, const Tempo&) = default;
};
struct TimeSignature {
  int numerator = 4, denominator_power = 2, metronome = 24, thirty_seconds = 8;
  friend bool operator==(const TimeSignature&, const TimeSignature&) = default;
};
struct TrackName {
  std::string text;
  friend bool operator==(const TrackName&, const TrackName&) = default;
};
struct Text {
  std::string text;
  friend bool operator==(const Text&, const Text&) = default;
};
struct EndOfTrack {
  friend bool operator==(const EndOfTrack&, const EndOfTrack&) = default;
};

using Payload =
    std::variant<NoteOn, NoteOff, ProgramChange, Tempo, TimeSignature, TrackName, Text, EndOfTrack>;

}  // namespace midi

struct MidiEvent {
  Tick tick = 0;  // absolute
  midi::Payload payload;
  friend bool operator==(const MidiEvent&, const MidiEvent&) = default;
};

struct SmfTrack {
  std::vector<MidiEvent> events;  // non-decreasing ticks
};

struct SmfFile {
  int format = 1;
  int division = kPpq;
  std::vector<SmfTrack> tracks;
};

/// Serializes without running status. Every track must end with EndOfTrack;
/// one is appended at the last event's tick when missing.
Bytes encode_smf(const SmfFile& file);

/// Parses format 0 or 1 with ticks-per-quarter division. Running status,
/// NoteOn with velocity 0, unknown chunks, sysex and unknown meta events are
/// handled; controller and other channel messages are skipped.
SmfFile read_smf(std::span<const uint8_t> bytes);

/// A note assembled from a NoteOn/NoteOff pair (first-in first-out per
/// channel and key). Unterminated notes end at the track's last tick.
struct TimedNote {
  Tick onset = 0;
  Tick duration = 0;
  int key = 60;
  int velocity = 64;
  int channel = 0;
};

std::vector<TimedNote> collect_notes(const SmfTrack& track);

}  // namespace tunesmith
