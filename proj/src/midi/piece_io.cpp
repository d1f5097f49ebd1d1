#include "midi/piece_io.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>

namespace tunesmith {

Tick sounding_duration(const Note& note) {
  Tick sounding = note.duration;
  switch (note.articulation) {
    case Articulation::Staccato: sounding = note.duration / 2; break;
    case Articulation::Normal: sounding = note.duration * 9 / 10; break;
    case Articulation::Tenuto: break;
  }
  return std::max<Tick>(1, sounding);
}

std::vector<int> assign_channels(const Piece& piece) {
  std::vector<int> channels;
  int next = 0;
  for (const auto& part : piece.parts) {
    if (part.percussion()) {
      channels.push_back(kPercussionChannel);
      continue;
    }
    if (next == kPercussionChannel) ++next;
    if (next > 15) throw std::invalid_argument("too many melodic parts for 15 channels");
    channels.push_back(next++);
  }
  return channels;
}

std::string piece_tag(const Piece& piece) {
  return "tunesmith id=" + piece.id + " scale=" + to_string(piece.scale);
}

namespace {

int time_signature_metronome(const Meter& meter) {
  if (meter.denominator == 8 && meter.numerator % 3 == 0) return 36;
  return 96 / meter.denominator;
}

int log2_exact(int v) {
  int p = 0;
  while ((1 << p) < v) ++p;
  return p;
}

}  // namespace

SmfFile piece_to_smf(const Piece& piece) {
  SmfFile file;
  file.format = 1;
  file.division = kPpq;
  const Tick total = piece.total_ticks();

  SmfTrack conductor;
  conductor.events.push_back({0, midi::TrackName{piece.title}});
  conductor.events.push_back({0, midi::Text{piece_tag(piece)}});
  const auto us = static_cast<uint32_t>(std::lround(60'000'000.0 / piece.tempo_bpm));
  conductor.events.push_back({0, midi::Tempo{us}});
  conductor.events.push_back(
      {0, midi::TimeSignature{piece.meter.numerator, log2_exact(piece.meter.denominator),
                              time_signature_metronome(piece.meter), 8}});
  conductor.events.push_back({total, midi::EndOfTrack{}});
  file.tracks.push_back(std::move(conductor));

  const auto channels = assign_channels(piece);
  for (size_t i = 0; i < piece.parts.size(); ++i) {
    const Part& part = piece.parts[i];
    const int channel = channels[i];
    SmfTrack track;
    track.events.push_back({0, midi::TrackName{std::string(to_string(part.kind))}});
    if (!part.percussion()) track.events.push_back({0, midi::ProgramChange{channel, part.instrument}});

    struct Ranked {
      MidiEvent event;
      int rank;
    };
    std::vector<Ranked> timed;
    for (const auto& change : part.program_changes) {
      timed.push_back({{change.tick, midi::ProgramChange{channel, change.program}}, 1});
    }
    Tick end = total;
    for (const auto& note : part.notes) {
      if (!note.pitch) continue;
      const Tick off = note.onset + sounding_duration(note);
      timed.push_back({{note.onset, midi::NoteOn{channel, note.pitch->midi, note.velocity}}, 2});
      timed.push_back({{off, midi::NoteOff{channel, note.pitch->midi, kNoteOffVelocity}}, 0});
      end = std::max(end, off);
    }
    std::stable_sort(timed.begin(), timed.end(), [](const Ranked& a, const Ranked& b) {
      if (a.event.tick != b.event.tick) return a.event.tick < b.event.tick;
      return a.rank < b.rank;
    });
    for (auto& r : timed) track.events.push_back(std::move(r.event));
    track.events.push_back({end, midi::EndOfTrack{}});
    file.tracks.push_back(std::move(track));
  }
  return file;
}

Bytes write_smf(const Piece& piece) {
  check_piece_invariants(piece);
  return encode_smf(piece_to_smf(piece));
}

namespace {

struct Tag {
  std::string id;
  std::optional<Scale> scale;
};

std::optional<Tag> parse_tag(const std::string& text) {
  static constexpr std::string_view kPrefix = "tunesmith ";
  if (text.rfind(kPrefix, 0) != 0) return std::nullopt;
  Tag tag;
  size_t pos = kPrefix.size();
  while (pos < text.size()) {
    size_t end = text.find(' ', pos);
    if (end == std::string::npos) end = text.size();
    const std::string field = text.substr(pos, end - pos);
    if (field.rfind("id=", 0) == 0) tag.id = field.substr(3);
    if (field.rfind("scale=", 0) == 0) tag.scale = parse_scale(field.substr(6));
    pos = end + 1;
  }
  return tag;
}

void fill_gaps(Part& part, Tick total, Tick measure) {
  std::vector<Note> out;
  Tick cursor = 0;
  auto rests_until = [&](Tick target) {
    while (cursor < target) {
      const Tick bar_end = (cursor / measure + 1) * measure;
      const Tick stop = std::min(bar_end, target);
      out.push_back(Note::rest(cursor, stop - cursor));
      cursor = stop;
    }
  };
  for (const auto& note : part.notes) {
    rests_until(note.onset);
    out.push_back(note);
    cursor = std::max(cursor, note.end());
  }
  rests_until(total);
  part.notes = std::move(out);
}

}  // namespace

Piece piece_from_smf(const SmfFile& file) {
  Piece piece;
  piece.scale = Scale{};
  piece.meter = make_meter(4, 4);
  const double rescale = static_cast<double>(kPpq) / file.division;
  auto tick_of = [&](Tick t) { return static_cast<Tick>(std::llround(static_cast<double>(t) * rescale)); };

  bool have_tempo = false;
  bool have_meter = false;
  Tick end = 0;
  for (const auto& track : file.tracks) {
    for (const auto& event : track.events) {
      end = std::max(end, tick_of(event.tick));
      if (const auto* tempo = std::get_if<midi::Tempo>(&event.payload); tempo && !have_tempo) {
        piece.tempo_bpm = static_cast<int>(std::lround(60'000'000.0 / tempo->microseconds_per_quarter));
        have_tempo = true;
      } else if (const auto* ts = std::get_if<midi::TimeSignature>(&event.payload); ts && !have_meter) {
        try {
          piece.meter = make_meter(ts->numerator, 1 << ts->denominator_power);
        } catch (const std::invalid_argument&) {
          piece.meter = make_meter(4, 4);
        }
        have_meter = true;
      } else if (const auto* text = std::get_if<midi::Text>(&event.payload)) {
        if (auto tag = parse_tag(text->text)) {
          piece.id = tag->id;
          if (tag->scale) piece.scale = *tag->scale;
        }
      }
    }
  }
  if (!piece.id.empty() && std::all_of(piece.id.begin(), piece.id.end(), ::isdigit)) {
    std::from_chars(piece.id.data(), piece.id.data() + piece.id.size(), piece.seed);
  }

  bool have_main = false;
  for (size_t t = 0; t < file.tracks.size(); ++t) {
    const auto& track = file.tracks[t];
    std::optional<std::string> name;
    std::vector<midi::ProgramChange> programs;
    std::vector<Tick> program_ticks;
    for (const auto& event : track.events) {
      if (const auto* n = std::get_if<midi::TrackName>(&event.payload); n && !name) name = n->text;
      if (const auto* pc = std::get_if<midi::ProgramChange>(&event.payload)) {
        programs.push_back(*pc);
        program_ticks.push_back(tick_of(event.tick));
      }
    }
    const auto notes = collect_notes(track);
    const std::optional<PartKind> named = name ? parse_part_kind(*name) : std::nullopt;
    if (file.format == 1 && t == 0 && notes.empty()) {
      if (name) piece.title = *name;
      continue;
    }
    if (!named && notes.empty()) continue;

    std::map<int, Part> by_channel;
    for (const auto& n : notes) {
      const int channel = named ? 0 : n.channel;
      Note note;
      note.pitch = Pitch(n.key);
      note.onset = tick_of(n.onset);
      note.duration = std::max<Tick>(1, tick_of(n.onset + n.duration) - note.onset);
      note.velocity = n.velocity;
      note.articulation = Articulation::Tenuto;
      by_channel[channel].notes.push_back(note);
    }
    if (named && by_channel.empty()) by_channel[0];
    for (auto& [channel, part] : by_channel) {
      if (named) {
        part.kind = *named;
      } else if (channel == kPercussionChannel) {
        part.kind = PartKind::Percussion;
      } else {
        part.kind = have_main ? PartKind::Accompaniment : PartKind::Main;
      }
      if (part.kind == PartKind::Main) have_main = true;
      bool first = true;
      for (size_t i = 0; i < programs.size(); ++i) {
        if (!named && programs[i].channel != channel) continue;
        if (first) {
          part.instrument = programs[i].program;
          first = false;
        } else {
          part.program_changes.push_back({program_ticks[i], programs[i].program});
        }
      }
      std::stable_sort(part.notes.begin(), part.notes.end(),
                       [](const Note& a, const Note& b) { return a.onset < b.onset; });
      piece.parts.push_back(std::move(part));
    }
  }

  const Tick measure = piece.meter.measure_ticks();
  piece.measure_count = std::max<int>(1, static_cast<int>((end + measure - 1) / measure));
  for (auto& part : piece.parts) {
    if (is_measured_part(part.kind)) fill_gaps(part, piece.total_ticks(), measure);
  }
  return piece;
}

}  // namespace tunesmith
