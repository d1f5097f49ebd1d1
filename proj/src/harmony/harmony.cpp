#include "harmony/harmony.h"

#include <algorithm>
#include <cmath>

#include "core/pitch_ops.h"

namespace tunesmith {

bool is_stable_chord(int root_degree) {
  return std::find(kStableChordDegrees.begin(), kStableChordDegrees.end(), root_degree) !=
         kStableChordDegrees.end();
}

ChordQuality triad_quality(int root_degree, const Scale& scale) {
  const auto& steps = mode_intervals(scale.mode);
  auto at = [&](int degree_index) {
    return steps[static_cast<size_t>(degree_index % 7)] + (degree_index >= 7 ? 12 : 0);
  };
  const int root = root_degree - 1;
  const int third = at(root + 2) - at(root);
  const int fifth = at(root + 4) - at(root);
  if (third == 4) return ChordQuality::Major;
  return fifth == 6 ? ChordQuality::Diminished : ChordQuality::Minor;
}

Chord make_triad(int root_degree, const Scale& scale, int root_near) {
  const int root_class = pitch_classes(scale)[static_cast<size_t>(root_degree - 1)];
  const int root = std::clamp(nearest_with_class(root_class, root_near), 0, 103);
  Chord chord;
  chord.root_degree = root_degree;
  chord.quality = triad_quality(root_degree, scale);
  chord.pitches = {Pitch(root), Pitch(shift_degrees(root, 2, scale)),
                   Pitch(shift_degrees(root, 4, scale))};
  return chord;
}

std::vector<int> triads_containing(int pitch_class, const Scale& scale) {
  std::vector<int> out;
  const auto classes = pitch_classes(scale);
  for (int root = 1; root <= 7; ++root) {
    for (int offset : {0, 2, 4}) {
      if (classes[static_cast<size_t>((root - 1 + offset) % 7)] == pitch_class) {
        out.push_back(root);
        break;
      }
    }
  }
  return out;
}

Chord invert_chord(const Chord& chord, int inversion) {
  Chord out = chord;
  const int steps = ((inversion % 3) + 3) % 3;
  for (int i = 0; i < steps; ++i) {
    Pitch lowest = out.pitches[0];
    out.pitches = {out.pitches[1], out.pitches[2], Pitch(lowest.midi + 12)};
  }
  out.inversion = (chord.inversion + steps) % 3;
  return out;
}

Chord choose_chord(Pitch current_main_pitch, const std::optional<Chord>& prev, const Scale& scale,
                   RandomSource& rng, int root_near) {
  const int pitch_class = snap_to_scale(current_main_pitch.midi, scale, -1) % 12;
  std::vector<int> candidates = triads_containing(pitch_class, scale);
  if (prev && !is_stable_chord(prev->root_degree)) {
    std::erase_if(candidates, [](int degree) { return !is_stable_chord(degree); });
  }
  int total = 0;
  for (int degree : candidates) total += is_stable_chord(degree) ? 3 : 1;
  const double pick = rng.next_unit() * total;
  int cumulative = 0;
  int chosen = candidates.back();
  for (int degree : candidates) {
    cumulative += is_stable_chord(degree) ? 3 : 1;
    if (pick < cumulative) {
      chosen = degree;
      break;
    }
  }
  const int inversion = rng.uniform_int(0, 2);
  return invert_chord(make_triad(chosen, scale, root_near), inversion);
}

std::vector<Note> arpeggiate(const Chord& chord, const Meter& meter, ArpeggioPattern pattern,
                             int velocity) {
  const bool odd_eighths =
      meter.denominator == 8 && (meter.numerator == 5 || meter.numerator == 7);
  const Tick unit = odd_eighths ? ticks(NoteLength::Sixteenth) : ticks(NoteLength::Eighth);
  const Tick measure = meter.measure_ticks();
  static constexpr std::array<size_t, 3> kUp = {0, 1, 2};
  static constexpr std::array<size_t, 3> kDown = {2, 1, 0};
  static constexpr std::array<size_t, 4> kUpDown = {0, 1, 2, 1};
  std::vector<Note> out;
  size_t i = 0;
  for (Tick pos = 0; pos < measure; pos += unit, ++i) {
    size_t index = 0;
    switch (pattern) {
      case ArpeggioPattern::Up: index = kUp[i % 3]; break;
      case ArpeggioPattern::Down: index = kDown[i % 3]; break;
      case ArpeggioPattern::UpDown: index = kUpDown[i % 4]; break;
    }
    Note note;
    note.pitch = chord.pitches[index];
    note.onset = pos;
    note.duration = std::min(unit, measure - pos);
    note.velocity = std::clamp(velocity, 1, 127);
    out.push_back(note);
  }
  return out;
}

Pitch harmonizing_pitch(const Part& main, const Scale& scale, Tick measure_start,
                        Tick measure_ticks, std::optional<Pitch> fallback) {
  const Tick measure_end = measure_start + measure_ticks;
  for (const auto& note : main.notes) {
    if (note.pitch && note.onset <= measure_start && note.end() > measure_start &&
        in_scale(*note.pitch, scale)) {
      return *note.pitch;
    }
  }
  for (const auto& note : main.notes) {
    if (note.onset >= measure_end) break;
    if (note.pitch && note.onset >= measure_start && in_scale(*note.pitch, scale)) {
      return *note.pitch;
    }
  }
  return fallback.value_or(Pitch(60 + scale.tonic));
}

int median_pitch(const Part& part) {
  std::vector<int> pitches;
  for (const auto& n : part.notes) {
    if (n.pitch) pitches.push_back(n.pitch->midi);
  }
  if (pitches.empty()) return 60;
  std::sort(pitches.begin(), pitches.end());
  return pitches[pitches.size() / 2];
}

int mean_velocity(const Part& part) {
  long sum = 0;
  long count = 0;
  for (const auto& n : part.notes) {
    if (n.pitch) {
      sum += n.velocity;
      ++count;
    }
  }
  if (count == 0) return 80;
  return static_cast<int>(std::lround(static_cast<double>(sum) / static_cast<double>(count)));
}

std::vector<Chord> plan_chords(const Part& main, const PieceConfig& config, RandomSource& rng) {
  const Tick measure = config.meter.measure_ticks();
  const int root_near = median_pitch(main) - 12;
  std::vector<Chord> chords;
  std::optional<Chord> prev;
  std::optional<Pitch> last_pitch;
  for (int m = 0; m < config.measure_count; ++m) {
    const Pitch pitch = harmonizing_pitch(main, config.scale, m * measure, measure, last_pitch);
    last_pitch = pitch;
    Chord chord = choose_chord(pitch, prev, config.scale, rng, root_near);
    chords.push_back(chord);
    prev = chord;
  }
  return chords;
}

Part generate_accompaniment(const Part& main, const PieceConfig& config, RandomSource& rng,
                            bool arpeggiated) {
  const Tick measure = config.meter.measure_ticks();
  const auto chords = plan_chords(main, config, rng);
  const int velocity = std::clamp(static_cast<int>(std::lround(mean_velocity(main) * 0.8)), 1, 127);
  Part part;
  if (arpeggiated) {
    part.kind = PartKind::Arpeggio;
    part.instrument = 46;  // Orchestral Harp
    const auto pattern = static_cast<ArpeggioPattern>(rng.uniform_int(0, 2));
    for (size_t m = 0; m < chords.size(); ++m) {
      for (Note note : arpeggiate(chords[m], config.meter, pattern, velocity)) {
        note.onset += static_cast<Tick>(m) * measure;
        part.notes.push_back(note);
      }
    }
  } else {
    part.kind = PartKind::Accompaniment;
    part.instrument = 48;  // String Ensemble 1
    for (size_t m = 0; m < chords.size(); ++m) {
      for (Pitch pitch : chords[m].pitches) {
        Note note;
        note.pitch = pitch;
        note.onset = static_cast<Tick>(m) * measure;
        note.duration = measure;
        note.velocity = velocity;
        part.notes.push_back(note);
      }
    }
  }
  return part;
}

}  // namespace tunesmith
