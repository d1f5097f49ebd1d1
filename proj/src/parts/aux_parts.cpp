#include "parts/aux_parts.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core/pitch_ops.h"
#include "harmony/harmony.h"

namespace tunesmith {

namespace {

int scaled_velocity(const Piece& piece, double factor) {
  const int base = mean_velocity(piece.main());
  return std::clamp(static_cast<int>(std::lround(base * factor)), 1, 127);
}

Note make_note(int pitch, Tick onset, Tick duration, int velocity) {
  Note note;
  note.pitch = Pitch(std::clamp(pitch, 0, 127));
  note.onset = onset;
  note.duration = duration;
  note.velocity = velocity;
  return note;
}

int degree_class(const Scale& scale, int degree) {
  return pitch_classes(scale)[static_cast<size_t>(degree - 1)];
}

}  // namespace

PercussionPattern sample_percussion_pattern(const Meter& meter, RandomSource& rng) {
  PercussionPattern pattern;
  const Tick slot = ticks(NoteLength::Eighth);
  for (Tick offset = 0; offset < meter.measure_ticks(); offset += slot) {
    const bool downbeat =
        std::find(meter.downbeats.begin(), meter.downbeats.end(), offset) != meter.downbeats.end();
    PercussionSlot s;
    s.offset = offset;
    s.hit = rng.chance_percent(downbeat ? kDownbeatHitPercent : kOffbeatHitPercent);
    if (downbeat) {
      s.drum = gm::kKick;
    } else if (s.hit) {
      s.drum = rng.chance_percent(50) ? gm::kClosedHat : gm::kSnare;
    } else {
      s.drum = gm::kClosedHat;
    }
    pattern.slots.push_back(s);
  }
  return pattern;
}

Part generate_pads(const Piece& piece, RandomSource& rng) {
  Part part;
  part.kind = PartKind::Pads;
  part.instrument = gm::kWarmPad;
  const Tick measure = piece.meter.measure_ticks();
  const int velocity = scaled_velocity(piece, 0.6);
  static constexpr std::array<int, 4> kDegrees = {1, 1, 4, 5};
  int m = 0;
  while (m < piece.measure_count) {
    const int span = std::min(rng.uniform_int(1, 2), piece.measure_count - m);
    const int degree = kDegrees[static_cast<size_t>(rng.uniform_int(0, 3))];
    const int pitch = fold_into(degree_class(piece.scale, degree) + 48, 48, 59);
    part.notes.push_back(make_note(pitch, m * measure, span * measure, velocity));
    m += span;
  }
  return part;
}

Part generate_simple_beat(const Piece& piece, RandomSource&) {
  Part part;
  part.kind = PartKind::SimpleBeat;
  const Tick measure = piece.meter.measure_ticks();
  const auto& downbeats = piece.meter.downbeats;
  for (int m = 0; m < piece.measure_count; ++m) {
    for (size_t i = 0; i < downbeats.size(); ++i) {
      const int drum = i == 0 ? gm::kKick : gm::kSnare;
      part.notes.push_back(
          make_note(drum, m * measure + downbeats[i], ticks(NoteLength::Eighth), 96));
    }
  }
  return part;
}

Part generate_percussion(const Piece& piece, RandomSource& rng) {
  Part part;
  part.kind = PartKind::Percussion;
  const PercussionPattern pattern = sample_percussion_pattern(piece.meter, rng);
  const Tick measure = piece.meter.measure_ticks();
  for (int m = 0; m < piece.measure_count; ++m) {
    for (const auto& slot : pattern.slots) {
      if (!slot.hit) continue;
      const int velocity = slot.drum == gm::kKick ? 100 : 80;
      part.notes.push_back(
          make_note(slot.drum, m * measure + slot.offset, ticks(NoteLength::Sixteenth), velocity));
    }
  }
  return part;
}

Part generate_bass(const Piece& piece, RandomSource& rng) {
  Part part;
  part.kind = PartKind::Bass;
  part.instrument = gm::kAcousticBass;
  const Tick measure = piece.meter.measure_ticks();
  const int target = std::max(median_pitch(piece.main()) - 24, 30);
  const int velocity = scaled_velocity(piece, 0.9);
  const auto& downbeats = piece.meter.downbeats;
  for (int m = 0; m < piece.measure_count; ++m) {
    for (size_t i = 0; i < downbeats.size(); ++i) {
      const Tick next = i + 1 < downbeats.size() ? downbeats[i + 1] : measure;
      const double u = rng.next_unit() * 100.0;
      const int degree = u < 50.0 ? 1 : (u < 80.0 ? 5 : 3);
      const int pitch = nearest_with_class(degree_class(piece.scale, degree), target);
      part.notes.push_back(make_note(pitch, m * measure + downbeats[i], next - downbeats[i], velocity));
    }
  }
  return part;
}

Part generate_drone(const Piece& piece, RandomSource&) {
  Part part;
  part.kind = PartKind::Drone;
  part.instrument = gm::kCello;
  const Tick measure = piece.meter.measure_ticks();
  const Tick quarter = ticks(NoteLength::Quarter);
  const int pitch = 48 + piece.scale.tonic;
  const int velocity = scaled_velocity(piece, 0.6);
  for (int m = 0; m < piece.measure_count; ++m) {
    for (Tick pos = 0; pos < measure; pos += quarter) {
      part.notes.push_back(make_note(pitch, m * measure + pos, std::min(quarter, measure - pos), velocity));
    }
  }
  return part;
}

const std::array<std::vector<Tick>, 3>& timpani_cells() {
  static const std::array<std::vector<Tick>, 3> kCells = {
      std::vector<Tick>{480, 480, 960},
      std::vector<Tick>{240, 240, 240, 240, 960},
      std::vector<Tick>{720, 240, 960},
  };
  return kCells;
}

Part generate_timpani(const Piece& piece, RandomSource& rng) {
  Part part;
  part.kind = PartKind::Timpani;
  part.instrument = gm::kTimpani;
  const Tick measure = piece.meter.measure_ticks();
  const int cap = (piece.measure_count + 9) / 10;
  const int k = rng.uniform_int(1, cap);

  std::vector<int> measures(static_cast<size_t>(piece.measure_count));
  for (int i = 0; i < piece.measure_count; ++i) measures[static_cast<size_t>(i)] = i;
  for (int i = 0; i < k; ++i) {
    const int j = rng.uniform_int(i, piece.measure_count - 1);
    std::swap(measures[static_cast<size_t>(i)], measures[static_cast<size_t>(j)]);
  }
  measures.resize(static_cast<size_t>(k));
  std::sort(measures.begin(), measures.end());

  const int tonic = 36 + piece.scale.tonic;
  const int dominant = nearest_with_class(degree_class(piece.scale, 5), tonic);
  for (int m : measures) {
    const auto& cell = timpani_cells()[static_cast<size_t>(rng.uniform_int(0, 2))];
    Tick pos = 0;
    for (size_t i = 0; i < cell.size() && pos < measure; ++i) {
      const int pitch = (i % 2 == 0) ? tonic : dominant;
      part.notes.push_back(make_note(pitch, m * measure + pos, std::min(cell[i], measure - pos), 100));
      pos += cell[i];
    }
  }
  return part;
}

Part generate_effects(const Piece& piece, RandomSource& rng) {
  Part part;
  part.kind = PartKind::Effects;
  const Tick total = piece.total_ticks();
  const int count = rng.uniform_int(0, 4);
  struct Hit {
    Tick tick;
    int program;
  };
  std::vector<Hit> hits;
  for (int i = 0; i < count; ++i) {
    const Tick tick = static_cast<Tick>(rng.next_unit() * static_cast<double>(total));
    const int program = kEffectPrograms[static_cast<size_t>(rng.uniform_int(0, 3))];
    hits.push_back({tick, program});
  }
  std::stable_sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.tick < b.tick; });

  part.instrument = hits.empty() ? kEffectPrograms[0] : hits.front().program;
  int current = part.instrument;
  const int pitch = 72 + piece.scale.tonic;
  for (const auto& hit : hits) {
    if (hit.program != current) {
      part.program_changes.push_back({hit.tick, hit.program});
      current = hit.program;
    }
    part.notes.push_back(make_note(pitch, hit.tick, std::min<Tick>(kWholeTicks, total - hit.tick), 90));
  }
  return part;
}

Part generate_aux_part(PartKind kind, const Piece& piece, RandomSource& rng) {
  switch (kind) {
    case PartKind::Pads: return generate_pads(piece, rng);
    case PartKind::SimpleBeat: return generate_simple_beat(piece, rng);
    case PartKind::Percussion: return generate_percussion(piece, rng);
    case PartKind::Bass: return generate_bass(piece, rng);
    case PartKind::Drone: return generate_drone(piece, rng);
    case PartKind::Timpani: return generate_timpani(piece, rng);
    case PartKind::Effects: return generate_effects(piece, rng);
    default: break;
  }
  throw std::invalid_argument("not an auxiliary part: " + std::string(to_string(kind)));
}

}  // namespace tunesmith
