#include "midi/smf.h"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>

namespace tunesmith {

Bytes encode_vlq(uint32_t value) {
  Bytes out;
  append_vlq(out, value);
  return out;
}

void append_vlq(Bytes& out, uint32_t value) {
  if (value > kMaxVlq) {
    throw std::invalid_argument("VLQ value out of range: " + std::to_string(value));
  }
  uint8_t groups[4];
  int n = 0;
  do {
    groups[n++] = static_cast<uint8_t>(value & 0x7F);
    value >>= 7;
  } while (value != 0);
  for (int i = n - 1; i >= 0; --i) {
    out.push_back(static_cast<uint8_t>(groups[i] | (i > 0 ? 0x80 : 0x00)));
  }
}

ParseError::ParseError(const std::string& what, size_t offset)
    : std::runtime_error(what + " at offset " + std::to_string(offset)), detail_(what), offset_(offset) {}

uint32_t decode_vlq(std::span<const uint8_t> bytes, size_t& pos) {
  const size_t start = pos;
  uint32_t value = 0;
  for (int i = 0; i < 4; ++i) {
    if (pos >= bytes.size()) throw ParseError("truncated variable-length quantity", start);
    const uint8_t b = bytes[pos++];
    value = (value << 7) | (b & 0x7F);
    if ((b & 0x80) == 0) return value;
  }
  throw ParseError("variable-length quantity longer than 4 bytes", start);
}

namespace {

void put_u16(Bytes& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

void put_u32(Bytes& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v >> 24));
  out.push_back(static_cast<uint8_t>(v >> 16));
  out.push_back(static_cast<uint8_t>(v >> 8));
  out.push_back(static_cast<uint8_t>(v));
}

uint8_t data_byte(int v, const char* what) {
  if (v < 0 || v > 127) throw std::invalid_argument(std::string(what) + " out of range");
  return static_cast<uint8_t>(v);
}

uint8_t status(int base, int channel) {
  if (channel < 0 || channel > 15) throw std::invalid_argument("channel out of range");
  return static_cast<uint8_t>(base | channel);
}

void put_meta(Bytes& out, uint8_t type, const Bytes& data) {
  out.push_back(0xFF);
  out.push_back(type);
  append_vlq(out, static_cast<uint32_t>(data.size()));
  out.insert(out.end(), data.begin(), data.end());
}

void encode_payload(Bytes& out, const midi::Payload& payload) {
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, midi::NoteOn>) {
          out.push_back(status(0x90, e.channel));
          out.push_back(data_byte(e.key, "key"));
          out.push_back(data_byte(e.velocity, "velocity"));
        } else if constexpr (std::is_same_v<T, midi::NoteOff>) {
          out.push_back(status(0x80, e.channel));
          out.push_back(data_byte(e.key, "key"));
          out.push_back(data_byte(e.velocity, "velocity"));
        } else if constexpr (std::is_same_v<T, midi::ProgramChange>) {
          out.push_back(status(0xC0, e.channel));
          out.push_back(data_byte(e.program, "program"));
        } else if constexpr (std::is_same_v<T, midi::Tempo>) {
          const uint32_t us = e.microseconds_per_quarter;
          if (us == 0 || us > 0xFFFFFF) throw std::invalid_argument("tempo out of range");
          put_meta(out, 0x51,
                   {static_cast<uint8_t>(us >> 16), static_cast<uint8_t>(us >> 8),
                    static_cast<uint8_t>(us)});
        } else if constexpr (std::is_same_v<T, midi::TimeSignature>) {
          put_meta(out, 0x58,
                   {static_cast<uint8_t>(e.numerator), static_cast<uint8_t>(e.denominator_power),
                    static_cast<uint8_t>(e.metronome), static_cast<uint8_t>(e.thirty_seconds)});
        } else if constexpr (std::is_same_v<T, midi::TrackName>) {
          put_meta(out, 0x03, Bytes(e.text.begin(), e.text.end()));
        } else if constexpr (std::is_same_v<T, midi::Text>) {
          put_meta(out, 0x01, Bytes(e.text.begin(), e.text.end()));
        } else {
          put_meta(out, 0x2F, {});
        }
      },
      payload);
}

}  // namespace

Bytes encode_smf(const SmfFile& file) {
  if (file.format < 0 || file.format > 1) throw std::invalid_argument("only formats 0 and 1 are written");
  if (file.division <= 0 || file.division > 0x7FFF) throw std::invalid_argument("division out of range");
  Bytes out = {'M', 'T', 'h', 'd'};
  put_u32(out, 6);
  put_u16(out, static_cast<uint32_t>(file.format));
  put_u16(out, static_cast<uint32_t>(file.tracks.size()));
  put_u16(out, static_cast<uint32_t>(file.division));
  for (const auto& track : file.tracks) {
    Bytes body;
    Tick last = 0;
    bool ended = false;
    for (const auto& event : track.events) {
      if (ended) throw std::invalid_argument("event after end of track");
      if (event.tick < last) throw std::invalid_argument("track events out of order");
      append_vlq(body, static_cast<uint32_t>(event.tick - last));
      last = event.tick;
      encode_payload(body, event.payload);
      ended = std::holds_alternative<midi::EndOfTrack>(event.payload);
    }
    if (!ended) {
      append_vlq(body, 0);
      encode_payload(body, midi::EndOfTrack{});
    }
    out.insert(out.end(), {'M', 'T', 'r', 'k'});
    put_u32(out, static_cast<uint32_t>(body.size()));
    out.insert(out.end(), body.begin(), body.end());
  }
  return out;
}

namespace {

class Cursor {
 public:
  Cursor(std::span<const uint8_t> bytes, size_t pos, size_t end, std::string where)
      : bytes_(bytes), pos_(pos), end_(end), where_(std::move(where)) {}

  size_t pos() const { return pos_; }
  bool done() const { return pos_ >= end_; }

  uint8_t byte() {
    if (pos_ >= end_) throw ParseError("truncated " + where_, pos_);
    return bytes_[pos_++];
  }
  uint32_t vlq() {
    auto view = bytes_.first(end_);
    try {
      return decode_vlq(view, pos_);
    } catch (const ParseError& e) {
      throw ParseError(e.detail() + " in " + where_, e.offset());
    }
  }
  std::span<const uint8_t> take(size_t n) {
    if (end_ - pos_ < n) throw ParseError("truncated " + where_, pos_);
    auto out = bytes_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

 private:
  std::span<const uint8_t> bytes_;
  size_t pos_;
  size_t end_;
  std::string where_;
};

uint32_t read_u32(std::span<const uint8_t> b, size_t pos) {
  return (uint32_t{b[pos]} << 24) | (uint32_t{b[pos + 1]} << 16) | (uint32_t{b[pos + 2]} << 8) |
         uint32_t{b[pos + 3]};
}

uint32_t read_u16(std::span<const uint8_t> b, size_t pos) {
  return (uint32_t{b[pos]} << 8) | uint32_t{b[pos + 1]};
}

SmfTrack parse_track(Cursor& in) {
  SmfTrack track;
  Tick tick = 0;
  int running = -1;
  while (!in.done()) {
    tick += in.vlq();
    const size_t status_pos = in.pos();
    uint8_t first = in.byte();
    int status_byte;
    std::optional<uint8_t> pending;
    if (first & 0x80) {
      status_byte = first;
    } else {
      if (running < 0) throw ParseError("data byte without running status", status_pos);
      status_byte = running;
      pending = first;
    }
    auto data = [&]() -> int {
      if (pending) {
        const int v = *pending;
        pending.reset();
        return v;
      }
      const size_t at = in.pos();
      const uint8_t b = in.byte();
      if (b & 0x80) throw ParseError("unexpected status byte in channel message", at);
      return b;
    };

    if (status_byte == 0xFF) {
      running = -1;
      const uint8_t type = in.byte();
      const uint32_t length = in.vlq();
      const auto body = in.take(length);
      switch (type) {
        case 0x51:
          if (length == 3) {
            track.events.push_back(
                {tick, midi::Tempo{(uint32_t{body[0]} << 16) | (uint32_t{body[1]} << 8) | body[2]}});
          }
          break;
        case 0x58:
          if (length == 4) {
            track.events.push_back({tick, midi::TimeSignature{body[0], body[1], body[2], body[3]}});
          }
          break;
        case 0x03:
          track.events.push_back({tick, midi::TrackName{std::string(body.begin(), body.end())}});
          break;
        case 0x01:
          track.events.push_back({tick, midi::Text{std::string(body.begin(), body.end())}});
          break;
        case 0x2F:
          track.events.push_back({tick, midi::EndOfTrack{}});
          return track;
        default:
          break;
      }
      continue;
    }
    if (status_byte == 0xF0 || status_byte == 0xF7) {
      running = -1;
      in.take(in.vlq());
      continue;
    }
    if (status_byte >= 0xF0) throw ParseError("unsupported system message", status_pos);

    running = status_byte;
    const int channel = status_byte & 0x0F;
    switch (status_byte & 0xF0) {
      case 0x80: {
        const int key = data();
        const int velocity = data();
        track.events.push_back({tick, midi::NoteOff{channel, key, velocity}});
        break;
      }
      case 0x90: {
        const int key = data();
        const int velocity = data();
        if (velocity == 0) {
          track.events.push_back({tick, midi::NoteOff{channel, key, 64}});
        } else {
          track.events.push_back({tick, midi::NoteOn{channel, key, velocity}});
        }
        break;
      }
      case 0xC0:
        track.events.push_back({tick, midi::ProgramChange{channel, data()}});
        break;
      case 0xD0:
        data();
        break;
      default:
        data();
        data();
        break;
    }
  }
  return track;
}

}  // namespace

SmfFile read_smf(std::span<const uint8_t> bytes) {
  if (bytes.size() < 14) throw ParseError("file too short for a header chunk", 0);
  if (!std::equal(bytes.begin(), bytes.begin() + 4, "MThd")) {
    throw ParseError("missing MThd header", 0);
  }
  const uint32_t header_length = read_u32(bytes, 4);
  if (header_length < 6) throw ParseError("header chunk shorter than 6 bytes", 4);
  if (bytes.size() < 8 + static_cast<size_t>(header_length)) throw ParseError("truncated header chunk", 8);
  SmfFile file;
  file.format = static_cast<int>(read_u16(bytes, 8));
  const uint32_t track_count = read_u16(bytes, 10);
  const uint32_t division = read_u16(bytes, 12);
  if (file.format > 1) throw ParseError("unsupported SMF format " + std::to_string(file.format), 8);
  if (division & 0x8000) throw ParseError("SMPTE time division is not supported", 12);
  if (division == 0) throw ParseError("zero time division", 12);
  file.division = static_cast<int>(division);

  size_t pos = 8 + header_length;
  uint32_t index = 0;
  while (file.tracks.size() < track_count) {
    if (bytes.size() - pos < 8) {
      throw ParseError("truncated chunk header (track " + std::to_string(index) + ")", pos);
    }
    const uint32_t length = read_u32(bytes, pos + 4);
    const bool is_track = std::equal(bytes.begin() + static_cast<long>(pos),
                                     bytes.begin() + static_cast<long>(pos) + 4, "MTrk");
    const size_t body = pos + 8;
    if (bytes.size() - body < length) {
      throw ParseError("truncated MTrk chunk " + std::to_string(index), pos);
    }
    if (is_track) {
      Cursor cursor(bytes, body, body + length, "MTrk chunk " + std::to_string(index));
      file.tracks.push_back(parse_track(cursor));
      ++index;
    }
    pos = body + length;
  }
  return file;
}

std::vector<TimedNote> collect_notes(const SmfTrack& track) {
  std::vector<TimedNote> notes;
  std::map<std::pair<int, int>, std::deque<size_t>> open;
  Tick last = 0;
  for (const auto& event : track.events) {
    last = std::max(last, event.tick);
    if (const auto* on = std::get_if<midi::NoteOn>(&event.payload)) {
      open[{on->channel, on->key}].push_back(notes.size());
      notes.push_back({event.tick, -1, on->key, on->velocity, on->channel});
    } else if (const auto* off = std::get_if<midi::NoteOff>(&event.payload)) {
      auto it = open.find({off->channel, off->key});
      if (it == open.end() || it->second.empty()) continue;
      TimedNote& note = notes[it->second.front()];
      it->second.pop_front();
      note.duration = event.tick - note.onset;
    }
  }
  for (auto& note : notes) {
    if (note.duration < 0) note.duration = last - note.onset;
  }
  std::erase_if(notes, [](const TimedNote& n) { return n.duration <= 0; });
  return notes;
}

}  // namespace tunesmith
