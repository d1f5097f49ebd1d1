#include "core/model.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <stdexcept>

namespace tunesmith {

Pitch make_pitch(int midi) {
  if (midi < 0 || midi > 127) {
    throw std::invalid_argument("pitch out of range 0..127: " + std::to_string(midi));
  }
  return Pitch(midi);
}

NoteLength nearest_length(Tick duration, int ppq) {
  NoteLength best = NoteLength::Sixteenth;
  Tick best_distance = -1;
  for (NoteLength kind : kAllNoteLengths) {
    Tick distance = std::llabs(ticks(kind, ppq) - duration);
    if (best_distance < 0 || distance < best_distance) {
      best = kind;
      best_distance = distance;
    }
  }
  return best;
}

std::string_view to_string(NoteLength kind) {
  switch (kind) {
    case NoteLength::Sixteenth: return "Sixteenth";
    case NoteLength::Eighth: return "Eighth";
    case NoteLength::Quarter: return "Quarter";
    case NoteLength::DottedQuarter: return "DottedQuarter";
    case NoteLength::Half: return "Half";
    case NoteLength::Whole: return "Whole";
  }
  return "?";
}

// ---------------------------------------------------------------------------

const std::array<int, 7>& mode_intervals(Mode mode) {
  static constexpr std::array<int, 7> kMajor = {0, 2, 4, 5, 7, 9, 11};
  static constexpr std::array<int, 7> kMinor = {0, 2, 3, 5, 7, 8, 10};
  static constexpr std::array<int, 7> kLydian = {0, 2, 4, 6, 7, 9, 11};
  static constexpr std::array<int, 7> kDorian = {0, 2, 3, 5, 7, 9, 10};
  static constexpr std::array<int, 7> kPhrygian = {0, 1, 3, 5, 7, 8, 10};
  static constexpr std::array<int, 7> kMixolydian = {0, 2, 4, 5, 7, 9, 10};
  switch (mode) {
    case Mode::Major: return kMajor;
    case Mode::NaturalMinor: return kMinor;
    case Mode::Lydian: return kLydian;
    case Mode::Dorian: return kDorian;
    case Mode::Phrygian: return kPhrygian;
    case Mode::Mixolydian: return kMixolydian;
  }
  return kMajor;
}

std::array<int, 7> pitch_classes(const Scale& scale) {
  std::array<int, 7> out{};
  const auto& steps = mode_intervals(scale.mode);
  for (size_t i = 0; i < 7; ++i) out[i] = (scale.tonic + steps[i]) % 12;
  return out;
}

bool in_scale(int pitch_class, const Scale& scale) {
  const int pc = ((pitch_class % 12) + 12) % 12;
  for (int member : pitch_classes(scale)) {
    if (member == pc) return true;
  }
  return false;
}

std::optional<int> degree_of(Pitch pitch, const Scale& scale) {
  const auto pcs = pitch_classes(scale);
  for (size_t i = 0; i < pcs.size(); ++i) {
    if (pcs[i] == pitch.pitch_class()) return static_cast<int>(i) + 1;
  }
  return std::nullopt;
}

bool is_stable(Pitch pitch, const Scale& scale) {
  auto degree = degree_of(pitch, scale);
  if (!degree) return false;
  return std::find(kStableDegrees.begin(), kStableDegrees.end(), *degree) != kStableDegrees.end();
}

namespace {

std::string lower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::optional<int> parse_int(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

}  // namespace

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Major: return "major";
    case Mode::NaturalMinor: return "minor";
    case Mode::Lydian: return "lydian";
    case Mode::Dorian: return "dorian";
    case Mode::Phrygian: return "phrygian";
    case Mode::Mixolydian: return "mixolydian";
  }
  return "major";
}

std::optional<Mode> parse_mode(std::string_view text) {
  const std::string key = lower(text);
  if (key == "major" || key == "ionian") return Mode::Major;
  if (key == "minor" || key == "naturalminor" || key == "natural-minor" || key == "aeolian") {
    return Mode::NaturalMinor;
  }
  for (Mode mode : kAllModes) {
    if (key == to_string(mode)) return mode;
  }
  return std::nullopt;
}

std::string tonic_name(int pitch_class) {
  static constexpr std::array<const char*, 12> kNames = {"C",  "C#", "D",  "D#", "E",  "F",
                                                         "F#", "G",  "G#", "A",  "A#", "B"};
  return kNames[static_cast<size_t>(((pitch_class % 12) + 12) % 12)];
}

std::optional<int> parse_tonic(std::string_view text) {
  if (text.empty() || text.size() > 2) return std::nullopt;
  static constexpr std::array<int, 7> kNatural = {9, 11, 0, 2, 4, 5, 7};  // A..G
  const char letter = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  if (letter < 'A' || letter > 'G') return std::nullopt;
  int pc = kNatural[static_cast<size_t>(letter - 'A')];
  if (text.size() == 2) {
    if (text[1] == '#') {
      pc += 1;
    } else if (text[1] == 'b') {
      pc += 11;
    } else {
      return std::nullopt;
    }
  }
  return pc % 12;
}

std::string to_string(const Scale& scale) {
  return tonic_name(scale.tonic) + ":" + std::string(to_string(scale.mode));
}

std::optional<Scale> parse_scale(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return std::nullopt;
  auto tonic = parse_tonic(text.substr(0, colon));
  auto mode = parse_mode(text.substr(colon + 1));
  if (!tonic || !mode) return std::nullopt;
  return Scale{*tonic, *mode};
}

// ---------------------------------------------------------------------------

Meter make_meter(int numerator, int denominator) {
  if (numerator < 2) throw std::invalid_argument("meter numerator must be >= 2");
  if (denominator != 4 && denominator != 8) {
    throw std::invalid_argument("meter denominator must be 4 or 8");
  }
  Meter meter;
  meter.numerator = numerator;
  meter.denominator = denominator;
  const Tick beat = kWholeTicks / denominator;
  std::vector<Tick> beats_at;  // downbeat positions in beats
  if (denominator == 4) {
    if (numerator <= 3) {
      beats_at = {0};
    } else {
      for (int b = 0; b < numerator; b += 2) beats_at.push_back(b);
      // a trailing single beat joins the previous group
      if (numerator % 2 == 1) beats_at.pop_back();
    }
  } else if (numerator == 5) {
    beats_at = {0, 3};
  } else if (numerator == 7) {
    beats_at = {0, 3, 5};
  } else if (numerator <= 3) {
    beats_at = {0};
  } else {
    for (int b = 0; b + 3 <= numerator; b += 3) beats_at.push_back(b);
  }
  meter.downbeats.clear();
  for (int b : beats_at) meter.downbeats.push_back(b * beat);
  meter.kind = meter.downbeats.size() > 1 ? MeterKind::Compound : MeterKind::Simple;
  return meter;
}

std::string to_string(const Meter& meter) {
  return std::to_string(meter.numerator) + "/" + std::to_string(meter.denominator);
}

std::optional<Meter> parse_meter(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return std::nullopt;
  auto num = parse_int(text.substr(0, slash));
  auto den = parse_int(text.substr(slash + 1));
  if (!num || !den || *num < 2 || (*den != 4 && *den != 8)) return std::nullopt;
  return make_meter(*num, *den);
}

double duration_seconds(int tempo_bpm, const Meter& meter, int measure_count) {
  const double quarters = static_cast<double>(meter.measure_ticks()) * measure_count / kPpq;
  return quarters * 60.0 / tempo_bpm;
}

// ---------------------------------------------------------------------------

std::string_view to_string(PartKind kind) {
  switch (kind) {
    case PartKind::Main: return "Main";
    case PartKind::Accompaniment: return "Accompaniment";
    case PartKind::Arpeggio: return "Arpeggio";
    case PartKind::Bass: return "Bass";
    case PartKind::Pads: return "Pads";
    case PartKind::Drone: return "Drone";
    case PartKind::Percussion: return "Percussion";
    case PartKind::SimpleBeat: return "SimpleBeat";
    case PartKind::Timpani: return "Timpani";
    case PartKind::Effects: return "Effects";
  }
  return "Main";
}

std::optional<PartKind> parse_part_kind(std::string_view text) {
  const std::string key = lower(text);
  for (PartKind kind : kAllPartKinds) {
    if (key == lower(to_string(kind))) return kind;
  }
  if (key == "simple-beat" || key == "beat") return PartKind::SimpleBeat;
  return std::nullopt;
}

// Timpani are tuned drums: GM program 47 on a melodic channel, so they stay
// off channel 10 even though they are percussion instruments.
bool uses_percussion_channel(PartKind kind) {
  return kind == PartKind::Percussion || kind == PartKind::SimpleBeat;
}

bool is_measured_part(PartKind kind) {
  return kind == PartKind::Main || kind == PartKind::Arpeggio || kind == PartKind::Bass ||
         kind == PartKind::Drone;
}

Tick Part::end_tick() const {
  Tick end = 0;
  for (const auto& n : notes) end = std::max(end, n.end());
  return end;
}

double Piece::duration_seconds() const {
  return tunesmith::duration_seconds(tempo_bpm, meter, measure_count);
}

const Part* Piece::find(PartKind kind) const {
  for (const auto& part : parts) {
    if (part.kind == kind) return &part;
  }
  return nullptr;
}

Part* Piece::find(PartKind kind) {
  for (auto& part : parts) {
    if (part.kind == kind) return &part;
  }
  return nullptr;
}

const Part& Piece::main() const {
  const Part* part = find(PartKind::Main);
  if (!part) throw std::logic_error("piece has no main part");
  return *part;
}

void check_piece_invariants(const Piece& piece) {
  auto fail = [](const std::string& what) { throw std::invalid_argument("invalid piece: " + what); };
  const auto mains = std::count_if(piece.parts.begin(), piece.parts.end(),
                                   [](const Part& p) { return p.kind == PartKind::Main; });
  if (mains != 1) fail("expected exactly one main part, found " + std::to_string(mains));
  if (piece.measure_count < 1) fail("measure_count must be >= 1");
  if (piece.tempo_bpm <= 0) fail("tempo must be positive");
  if (piece.scale.tonic < 0 || piece.scale.tonic > 11) fail("tonic must be a pitch class");
  const double seconds = piece.duration_seconds();
  if (seconds < 60.0 || seconds > 300.0) {
    fail("playing time " + std::to_string(seconds) + " s outside [60, 300]");
  }
  for (const auto& part : piece.parts) {
    if (part.instrument < 0 || part.instrument > 127) fail("instrument out of range");
    Tick last_onset = 0;
    for (const auto& note : part.notes) {
      if (note.duration <= 0) fail("non-positive duration in " + std::string(to_string(part.kind)));
      if (note.onset < 0) fail("negative onset");
      if (note.onset < last_onset) fail("notes not sorted by onset");
      last_onset = note.onset;
      if (note.pitch) {
        if (!note.pitch->valid()) fail("pitch out of range");
        if (note.velocity < 1 || note.velocity > 127) fail("velocity out of range");
      }
    }
    for (const auto& pc : part.program_changes) {
      if (pc.program < 0 || pc.program > 127) fail("program change out of range");
    }
  }
}

}  // namespace tunesmith
