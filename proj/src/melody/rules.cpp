#include "melody/rules.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "core/pitch_ops.h"

namespace tunesmith {

void commit_pitch(LocalContext& ctx, int pitch, const Scale& scale) {
  if (auto prev = ctx.last()) {
    ctx.direction = pitch > *prev   ? MelodicDirection::Ascending
                    : pitch < *prev ? MelodicDirection::Descending
                                    : MelodicDirection::Neutral;
  }
  ctx.contour.push_back(pitch);
  while (ctx.contour.size() > kContourWindow) ctx.contour.pop_front();
  ctx.unstable_run = is_stable(Pitch(pitch), scale) ? 0 : ctx.unstable_run + 1;
}

bool satisfies_rules(const LocalContext& ctx, int pitch, const Scale& scale) {
  const auto p1 = ctx.last();
  if (!p1) return true;
  if (auto p2 = ctx.before_last(); p2 && std::abs(*p1 - *p2) > kLongJump) {
    const int move = pitch - *p1;
    if (std::abs(move) < 1 || std::abs(move) > 2 || sign(move) != -sign(*p1 - *p2)) return false;
  }
  const bool stable = is_stable(Pitch(pitch), scale);
  if (ctx.unstable_run >= 2 && !stable) return false;
  if (std::abs(pitch - *p1) > kLongJump && !stable) return false;
  return true;
}

int conform_pitch(int candidate, const LocalContext& ctx, const Scale& scale) {
  const auto p1 = ctx.last();
  if (!p1) return fold_into(candidate, kMelodyLow, kMelodyHigh);
  if (auto p2 = ctx.before_last(); p2 && std::abs(*p1 - *p2) > kLongJump) {
    return scale_step(*p1, -sign(*p1 - *p2), scale);
  }
  int pitch = fold_into(candidate, kMelodyLow, kMelodyHigh);
  if (ctx.unstable_run >= 2 && !is_stable(Pitch(pitch), scale)) {
    int dir = sign(pitch - *p1);
    if (dir == 0) dir = pitch < (kMelodyLow + kMelodyHigh) / 2 ? 1 : -1;
    int snapped = stable_in_direction(pitch, scale, dir);
    if (snapped < kMelodyLow || snapped > kMelodyHigh) snapped = stable_in_direction(pitch, scale, -dir);
    pitch = snapped;
  }
  if (std::abs(pitch - *p1) > kLongJump && !is_stable(Pitch(pitch), scale)) {
    pitch = stable_in_direction(pitch, scale, -sign(pitch - *p1));
  }
  return pitch;
}

Direction choose_direction(const LocalContext& ctx, RandomSource& rng) {
  double up_percent = 50.0;
  const auto& c = ctx.contour;
  if (c.size() >= 4) {
    bool rising = true;
    bool falling = true;
    for (size_t i = c.size() - 3; i < c.size(); ++i) {
      rising = rising && c[i] > c[i - 1];
      falling = falling && c[i] < c[i - 1];
    }
    if (rising) up_percent = 30.0;
    if (falling) up_percent = 70.0;
  }
  return rng.chance_percent(up_percent) ? Direction::Up : Direction::Down;
}

int melody_tonic(const Scale& scale) { return kMelodyLow + scale.tonic; }

PitchDecision next_pitch(LocalContext& ctx, const Scale& scale, const GenerationTables& tables,
                         const MelodySettings& settings, RandomSource& rng, bool strong_beat) {
  const auto prev = ctx.last();
  if (!prev) {
    const int start = melody_tonic(scale);
    commit_pitch(ctx, start, scale);
    return {Pitch(start), false};
  }

  if (!strong_beat) {
    const double percent =
        settings.dissonance_percent * (ctx.allow_extra_dissonance ? 2.0 : 1.0);
    if (rng.chance_percent(percent)) {
      static constexpr std::array<int, 6> kDissonant = {-6, 6, -10, 10, -11, 11};
      const int leap = kDissonant[static_cast<size_t>(rng.uniform_int(0, 5))];
      int pitch = *prev + leap;
      if (pitch < kMelodyLow || pitch > kMelodyHigh) pitch = *prev - leap;
      pitch = std::clamp(pitch, 0, 127);
      commit_pitch(ctx, pitch, scale);
      return {Pitch(pitch), true};
    }
  }

  int candidate = 0;
  int travel = 0;
  if (ctx.special_sequence && !ctx.special_sequence->remaining.empty()) {
    candidate = ctx.special_sequence->remaining.front();
    ctx.special_sequence->remaining.pop_front();
    if (ctx.special_sequence->remaining.empty()) ctx.special_sequence.reset();
    travel = sign(candidate - *prev);
  } else {
    IntervalChoice choice = sample_interval(tables, rng);
    choice.direction = choose_direction(ctx, rng);
    int delta = interval_semitones(choice, Pitch(*prev), scale);
    if (*prev + delta < kMelodyLow || *prev + delta > kMelodyHigh) {
      choice.direction = choice.direction == Direction::Up ? Direction::Down : Direction::Up;
      delta = interval_semitones(choice, Pitch(*prev), scale);
    }
    candidate = *prev + delta;
    travel = sign(delta);
  }
  candidate = snap_to_scale(candidate, scale, travel);
  const int pitch = conform_pitch(candidate, ctx, scale);
  commit_pitch(ctx, pitch, scale);
  return {Pitch(pitch), false};
}

std::vector<int> circle_of_fifths_sequence(int start, int count, const Scale& scale) {
  std::vector<int> out;
  if (count < 1) return out;
  out.push_back(start);
  int pitch = start;
  for (int i = 1; i < count; ++i) {
    pitch -= 7;
    if (pitch < kMelodyLow) pitch += 12;
    pitch = snap_to_scale(pitch, scale, -1);
    out.push_back(pitch);
  }
  return out;
}

std::vector<int> expanded_chord_sequence(int near, const Scale& scale, RandomSource& rng) {
  static constexpr std::array<int, 3> kRoots = {1, 4, 5};
  const size_t which = static_cast<size_t>(rng.uniform_int(0, 2));
  const int root_degree = kRoots[which];
  const int root_class = pitch_classes(scale)[static_cast<size_t>(root_degree - 1)];
  const int root = fold_into(nearest_with_class(root_class, near), kMelodyLow, kMelodyHigh - 12);
  std::vector<int> tones = {root, shift_degrees(root, 2, scale), shift_degrees(root, 4, scale)};
  if (root_degree == 5) tones.push_back(shift_degrees(root, 6, scale));
  return tones;
}

std::optional<Tick> ticks_to_next_downbeat(const Meter& meter, Tick position) {
  const Tick in_measure = position % meter.measure_ticks();
  for (Tick d : meter.downbeats) {
    if (d > in_measure) return d - in_measure;
  }
  return std::nullopt;
}

bool on_downbeat(const Meter& meter, Tick position) {
  const Tick in_measure = position % meter.measure_ticks();
  return std::find(meter.downbeats.begin(), meter.downbeats.end(), in_measure) !=
         meter.downbeats.end();
}

LengthDecision next_length(const LocalContext& ctx, Tick remaining_in_measure,
                           std::optional<Tick> to_next_downbeat,
                           std::optional<NoteLength> prev, const GenerationTables& tables,
                           const MelodySettings& settings, RandomSource& rng) {
  NoteLength kind = sample_length(tables.length, rng);
  if (prev) {
    const int anchor = length_position(*prev);
    for (int tries = 0; tries < 8 && std::abs(length_position(kind) - anchor) > 2; ++tries) {
      kind = sample_length(tables.length, rng);
    }
    const int gap = length_position(kind) - anchor;
    if (std::abs(gap) > 2) kind = static_cast<NoteLength>(anchor + 2 * sign(gap));
  }
  LengthDecision out;
  out.duration = std::min(ticks(kind), remaining_in_measure);
  if (to_next_downbeat && out.duration > *to_next_downbeat) {
    const double percent =
        settings.syncopation_percent * (ctx.allow_extra_syncopation ? 2.0 : 1.0);
    if (rng.chance_percent(percent)) {
      out.syncopated = true;
    } else {
      out.duration = *to_next_downbeat;
    }
  }
  out.kind = nearest_length(out.duration);
  return out;
}

std::vector<Note> fill_span(LocalContext& ctx, Tick start, Tick end, const Meter& meter,
                            const Scale& scale, const GenerationTables& tables,
                            const MelodySettings& settings, RandomSource& rng) {
  std::vector<Note> out;
  const Tick measure = meter.measure_ticks();
  Tick pos = start;
  while (pos < end) {
    const Tick limit = std::min(end, (pos / measure + 1) * measure);
    const LengthDecision length =
        next_length(ctx, limit - pos, ticks_to_next_downbeat(meter, pos), ctx.last_length,
                    tables, settings, rng);
    const PitchDecision pitch =
        next_pitch(ctx, scale, tables, settings, rng, on_downbeat(meter, pos));

    Note note;
    note.pitch = pitch.pitch;
    note.onset = pos;
    note.duration = length.duration;
    const double jitter = 0.9 + 0.2 * rng.next_unit();
    note.velocity = std::clamp(static_cast<int>(std::lround(ctx.dynamics_level * jitter)), 1, 127);
    if (ctx.ornamentation && rng.chance_percent(settings.ornament_percent)) {
      note.articulation = rng.chance_percent(50) ? Articulation::Staccato : Articulation::Tenuto;
    }
    out.push_back(note);
    ctx.last_length = length.kind;
    pos += length.duration;
  }
  return out;
}

}  // namespace tunesmith
