#include "melody/variations.h"

#include <algorithm>
#include <cmath>

#include "core/pitch_ops.h"
#include "melody/rules.h"

namespace tunesmith {

std::string_view to_string(VariationKind kind) {
  switch (kind) {
    case VariationKind::Transposition: return "Transposition";
    case VariationKind::Inversion: return "Inversion";
    case VariationKind::VaryEnding: return "VaryEnding";
    case VariationKind::VaryBase: return "VaryBase";
    case VariationKind::Retrograde: return "Retrograde";
    case VariationKind::KeyChange: return "KeyChange";
    case VariationKind::NotesToRests: return "NotesToRests";
    case VariationKind::MultiplyPitches: return "MultiplyPitches";
  }
  return "?";
}

VariationKind select_variation(RandomSource& rng) {
  return kAllVariations[static_cast<size_t>(rng.uniform_int(0, 7))];
}

Tick motif_duration(const Motif& motif) {
  Tick total = 0;
  for (const auto& n : motif.notes) total += n.duration;
  return total;
}

namespace {

template <typename Fn>
Motif map_pitches(const Motif& motif, Fn&& fn) {
  Motif out = motif;
  for (auto& note : out.notes) {
    if (note.pitch) note.pitch = Pitch(std::clamp(fn(note.pitch->midi), 0, 127));
  }
  return out;
}

// Context replaying the pitched notes that precede `until`.
LocalContext context_before(const std::vector<Note>& notes, size_t until,
                            const VariationEnv& env) {
  LocalContext ctx;
  ctx.dynamics_level = env.dynamics_level;
  for (size_t i = 0; i < until && i < notes.size(); ++i) {
    if (notes[i].pitch) commit_pitch(ctx, notes[i].pitch->midi, env.scale);
    ctx.last_length = nearest_length(notes[i].duration);
  }
  return ctx;
}

Motif vary_ending(const Motif& motif, const VariationEnv& env, RandomSource& rng) {
  const size_t count = motif.notes.size();
  const size_t tail = std::max<size_t>(1, (count + 3) / 4);
  const size_t first = count - tail;
  LocalContext ctx = context_before(motif.notes, first, env);
  const Tick start = motif.notes[first].onset;
  const Tick end = static_cast<Tick>(motif.length_measures) * env.meter.measure_ticks();
  Motif out;
  out.length_measures = motif.length_measures;
  out.notes.assign(motif.notes.begin(), motif.notes.begin() + static_cast<long>(first));
  auto fresh = fill_span(ctx, start, end, env.meter, env.scale, env.tables, env.settings, rng);
  out.notes.insert(out.notes.end(), fresh.begin(), fresh.end());
  return out;
}

Motif vary_base(const Motif& motif, const VariationEnv& env, RandomSource& rng) {
  const Tick end = static_cast<Tick>(motif.length_measures) * env.meter.measure_ticks();
  Motif out;
  out.length_measures = motif.length_measures;
  LocalContext ctx;
  ctx.dynamics_level = env.dynamics_level;
  Tick cursor = 0;
  auto fill_to = [&](Tick target) {
    if (target <= cursor) return;
    auto fresh = fill_span(ctx, cursor, target, env.meter, env.scale, env.tables, env.settings, rng);
    out.notes.insert(out.notes.end(), fresh.begin(), fresh.end());
    cursor = target;
  };
  for (const auto& note : motif.notes) {
    if (!on_downbeat(env.meter, note.onset)) continue;
    fill_to(note.onset);
    out.notes.push_back(note);
    if (note.pitch) commit_pitch(ctx, note.pitch->midi, env.scale);
    ctx.last_length = nearest_length(note.duration);
    cursor = note.end();
  }
  fill_to(end);
  return out;
}

Motif notes_to_rests(const Motif& motif, const VariationEnv& env, RandomSource& rng) {
  Motif out = motif;
  for (auto& note : out.notes) {
    const bool hit = rng.chance_percent(env.settings.rest_percent);
    if (hit && note.pitch && !on_downbeat(env.meter, note.onset)) {
      note = Note::rest(note.onset, note.duration);
    }
  }
  return out;
}

}  // namespace

Motif transpose_motif(const Motif& motif, int degrees, const Scale& scale) {
  return map_pitches(motif, [&](int p) { return shift_degrees(p, degrees, scale); });
}

Motif invert_motif(const Motif& motif, const Scale& scale) {
  auto first = std::find_if(motif.notes.begin(), motif.notes.end(),
                            [](const Note& n) { return n.pitch.has_value(); });
  if (first == motif.notes.end()) return motif;
  const int axis = first->pitch->midi;
  return map_pitches(motif, [&](int p) {
    const int mirrored = 2 * axis - p;
    return snap_to_scale(mirrored, scale, sign(mirrored - axis));
  });
}

Motif retrograde_motif(const Motif& motif) {
  Motif out;
  out.length_measures = motif.length_measures;
  const Tick total = motif_duration(motif);
  Tick origin = motif.notes.empty() ? 0 : motif.notes.front().onset;
  for (auto it = motif.notes.rbegin(); it != motif.notes.rend(); ++it) {
    Note note = *it;
    note.onset = origin + total - (it->end() - origin);
    out.notes.push_back(note);
  }
  return out;
}

Motif change_key(const Motif& motif, int semitones, const Scale& scale) {
  return map_pitches(motif, [&](int p) {
    return snap_to_scale(fold_into(p + semitones, kMelodyLow, kMelodyHigh), scale, sign(semitones));
  });
}

Motif multiply_pitches(const Motif& motif, int factor, const Scale& scale) {
  const int reference = melody_tonic(scale);
  return map_pitches(motif, [&](int p) {
    const int offset = degree_distance(reference, p, scale);
    return fold_into(shift_degrees(reference, offset * factor, scale), kMelodyLow, kMelodyHigh);
  });
}

Motif apply_variation(const Motif& motif, VariationKind kind, const VariationEnv& env,
                      RandomSource& rng) {
  if (motif.notes.empty()) return motif;
  switch (kind) {
    case VariationKind::Transposition: {
      static constexpr std::array<int, 6> kShifts = {-3, -2, -1, 1, 2, 3};
      return transpose_motif(motif, kShifts[static_cast<size_t>(rng.uniform_int(0, 5))],
                             env.scale);
    }
    case VariationKind::Inversion:
      return invert_motif(motif, env.scale);
    case VariationKind::VaryEnding:
      return vary_ending(motif, env, rng);
    case VariationKind::VaryBase:
      return vary_base(motif, env, rng);
    case VariationKind::Retrograde:
      return retrograde_motif(motif);
    case VariationKind::KeyChange:
      return change_key(motif, rng.chance_percent(50) ? 7 : -7, env.scale);
    case VariationKind::NotesToRests:
      return notes_to_rests(motif, env, rng);
    case VariationKind::MultiplyPitches:
      return multiply_pitches(motif, rng.uniform_int(2, 3), env.scale);
  }
  return motif;
}

}  // namespace tunesmith
