#include "melody/melody.h"

#include <algorithm>
#include <cstdlib>

#include "core/pitch_ops.h"
#include "distributions/intervals.h"
#include "melody/rules.h"

namespace tunesmith {

MelodySettings melody_settings(const PieceConfig& config) {
  MelodySettings settings;
  settings.dissonance_percent = config.dissonance_percent;
  settings.syncopation_percent = config.syncopation_percent;
  settings.variation_percent = config.variation_percent;
  settings.rest_percent = config.rest_percent;
  settings.constraints_enabled = config.constraints_enabled;
  return settings;
}

std::vector<Note> split_at_downbeats(const std::vector<Note>& notes, const Meter& meter) {
  const Tick measure = meter.measure_ticks();
  std::vector<Note> out;
  out.reserve(notes.size());
  for (const auto& note : notes) {
    Note piece = note;
    bool split = true;
    while (split) {
      split = false;
      const Tick bar = (piece.onset / measure) * measure;
      for (Tick offset = bar; offset < piece.end(); offset += measure) {
        for (Tick d : meter.downbeats) {
          const Tick at = offset + d;
          if (at > piece.onset && at < piece.end()) {
            Note head = piece;
            head.duration = at - piece.onset;
            out.push_back(head);
            piece.duration = piece.end() - at;
            piece.onset = at;
            split = true;
            break;
          }
        }
        if (split) break;
      }
    }
    out.push_back(piece);
  }
  return out;
}

LocalContext conform_line(std::vector<Note>& notes, const Scale& scale, const Meter& meter,
                          int dynamics_level) {
  LocalContext ctx;
  ctx.dynamics_level = dynamics_level;
  for (auto& note : notes) {
    ctx.last_length = nearest_length(note.duration);
    if (!note.pitch) {
      // a rest on a downbeat takes a pitch
      if (!on_downbeat(meter, note.onset)) continue;
      note.pitch = Pitch(ctx.last().value_or(melody_tonic(scale)));
      note.velocity = std::clamp(dynamics_level, 1, 127);
    }
    int pitch = note.pitch->midi;
    if (!in_scale(pitch, scale)) {
      if (!on_downbeat(meter, note.onset)) {
        commit_pitch(ctx, pitch, scale);
        continue;
      }
      pitch = snap_to_scale(pitch, scale, -1);
    }
    pitch = conform_pitch(pitch, ctx, scale);
    note.pitch = Pitch(pitch);
    commit_pitch(ctx, pitch, scale);
  }
  return ctx;
}

std::vector<Note> make_cadence(const LocalContext& ctx, const Scale& scale, const Meter& meter) {
  const Tick measure = meter.measure_ticks();
  const Tick eighth = ticks(NoteLength::Eighth);
  const Tick last_downbeat = meter.downbeats.back();
  Tick tonic_start = last_downbeat;
  if (tonic_start == 0) tonic_start = measure >= 3 * kPpq ? measure - 2 * kPpq : measure / 2;
  const Tick penultimate_start = std::max<Tick>(0, tonic_start - eighth);

  // Approach segments cover [0, penultimate_start), split at downbeats.
  std::vector<std::pair<Tick, Tick>> segments;
  Tick seg_start = 0;
  for (Tick d : meter.downbeats) {
    if (d > seg_start && d < penultimate_start) {
      segments.emplace_back(seg_start, d);
      seg_start = d;
    }
  }
  if (seg_start < penultimate_start) segments.emplace_back(seg_start, penultimate_start);

  LocalContext state = ctx;
  const int tonic_class = scale.tonic;
  std::vector<Note> out;
  auto emit = [&](int pitch, Tick onset, Tick duration) {
    Note note;
    note.pitch = Pitch(std::clamp(pitch, 0, 127));
    note.onset = onset;
    note.duration = duration;
    note.velocity = std::clamp(state.dynamics_level, 1, 127);
    out.push_back(note);
    commit_pitch(state, pitch, scale);
  };

  int current = state.last().value_or(melody_tonic(scale));
  for (auto [from, to] : segments) {
    const int target = fold_into(nearest_with_class(tonic_class, current), kMelodyLow, kMelodyHigh);
    int direction = sign(target - current);
    if (direction == 0) direction = -1;
    int pitch = state.last() ? conform_pitch(scale_step(current, direction, scale), state, scale)
                             : melody_tonic(scale);
    emit(pitch, from, to - from);
    current = pitch;
  }

  const auto classes = pitch_classes(scale);
  int penultimate = 0;
  bool found = false;
  int best_distance = 0;
  for (int degree : {2, 7, 5}) {
    const int candidate = nearest_with_class(classes[static_cast<size_t>(degree - 1)], current);
    if (state.last() && !satisfies_rules(state, candidate, scale)) continue;
    const int distance = std::abs(candidate - current);
    if (!found || distance < best_distance) {
      penultimate = candidate;
      best_distance = distance;
      found = true;
    }
  }
  if (!found) penultimate = conform_pitch(current, state, scale);
  emit(penultimate, penultimate_start, tonic_start - penultimate_start);

  emit(nearest_with_class(tonic_class, penultimate), tonic_start, measure - tonic_start);
  return out;
}

namespace {

Part unconstrained_main_part(const PieceConfig& config, const GenerationTables& tables,
                             RandomSource& rng) {
  Part part;
  part.kind = PartKind::Main;
  part.instrument = config.main_instrument;
  const Tick total = config.meter.measure_ticks() * config.measure_count;
  int pitch = melody_tonic(config.scale);
  Tick pos = 0;
  while (pos < total) {
    if (pos > 0) {
      IntervalChoice choice = sample_interval(tables, rng);
      choice.direction = rng.chance_percent(50) ? Direction::Up : Direction::Down;
      int delta = interval_semitones(choice, Pitch(pitch), config.scale, false);
      if (pitch + delta < kMelodyLow || pitch + delta > kMelodyHigh) {
        choice.direction = choice.direction == Direction::Up ? Direction::Down : Direction::Up;
        delta = interval_semitones(choice, Pitch(pitch), config.scale, false);
      }
      pitch += delta;
    }
    const NoteLength kind = sample_length(tables.length, rng);
    Note note;
    note.pitch = Pitch(pitch);
    note.onset = pos;
    note.duration = std::min(ticks(kind), total - pos);
    note.velocity = 80;
    part.notes.push_back(note);
    pos += note.duration;
  }
  return part;
}

struct Phrase {
  std::vector<Motif> motifs;
  int measures = 0;
  bool replayed = false;
};

void start_special_sequence(LocalContext& ctx, const Scale& scale, RandomSource& rng) {
  const int from = *ctx.last();
  SpecialSequence seq;
  if (rng.chance_percent(50)) {
    seq.kind = SpecialSequenceKind::CircleOfFifths;
    auto tones = circle_of_fifths_sequence(from, rng.uniform_int(3, 5), scale);
    seq.remaining.assign(tones.begin() + 1, tones.end());
  } else {
    seq.kind = SpecialSequenceKind::ExpandedChord;
    auto tones = expanded_chord_sequence(from, scale, rng);
    seq.remaining.assign(tones.begin(), tones.end());
  }
  ctx.special_sequence = std::move(seq);
}

}  // namespace

Part generate_main_part(const PieceConfig& config, const GenerationTables& tables,
                        RandomSource& rng) {
  if (!config.constraints_enabled) return unconstrained_main_part(config, tables, rng);

  const MelodySettings settings = melody_settings(config);
  const Scale& scale = config.scale;
  const Meter& meter = config.meter;
  const Tick measure = meter.measure_ticks();
  const int body_measures = config.measure_count - 1;

  LocalContext ctx;
  ctx.dynamics_level = rng.uniform_int(64, 100);
  ctx.allow_extra_dissonance = rng.chance_percent(15);
  ctx.allow_extra_syncopation = rng.chance_percent(15);
  ctx.ornamentation = rng.chance_percent(30);
  const VariationEnv env{scale, meter, tables, settings, ctx.dynamics_level};

  std::vector<Note> line;
  int placed = 0;

  auto place = [&](const Motif& motif, bool commit) {
    for (Note note : motif.notes) {
      note.onset += static_cast<Tick>(placed) * measure;
      line.push_back(note);
      if (commit && note.pitch) commit_pitch(ctx, note.pitch->midi, scale);
    }
    if (!motif.notes.empty()) ctx.last_length = nearest_length(motif.notes.back().duration);
    placed += motif.length_measures;
  };
  auto maybe_vary = [&](Motif motif) {
    if (placed >= 2 && rng.chance_percent(settings.variation_percent)) {
      const int passes = rng.uniform_int(1, 3);
      for (int i = 0; i < passes; ++i) motif = apply_variation(motif, select_variation(rng), env, rng);
    }
    return motif;
  };

  std::vector<Phrase> phrases;
  while (placed < body_measures) {
    const int left = body_measures - placed;
    auto replay = std::find_if(phrases.begin(), phrases.end(), [&](const Phrase& p) {
      return !p.replayed && p.measures <= left;
    });
    if (replay != phrases.end() && rng.chance_percent(50)) {
      replay->replayed = true;
      const std::vector<Motif> motifs = replay->motifs;
      for (const auto& motif : motifs) place(maybe_vary(motif), true);
      continue;
    }

    ctx.motif_length_measures = rng.uniform_int(1, 2);
    const int motif_count = rng.uniform_int(2, 4);
    if (ctx.last() && rng.chance_percent(settings.special_sequence_percent)) {
      start_special_sequence(ctx, scale, rng);
    }
    Phrase phrase;
    for (int i = 0; i < motif_count && placed < body_measures; ++i) {
      const int length = std::min(ctx.motif_length_measures, body_measures - placed);
      Motif motif;
      if (i > 0 && phrase.motifs.front().length_measures == length && rng.chance_percent(50)) {
        motif = maybe_vary(phrase.motifs.front());
        place(motif, true);
      } else {
        motif.length_measures = length;
        motif.notes = fill_span(ctx, 0, length * measure, meter, scale, tables, settings, rng);
        place(motif, false);
      }
      phrase.motifs.push_back(motif);
      phrase.measures += length;
    }
    ctx.previous_phrases.insert(ctx.previous_phrases.end(), phrase.motifs.begin(),
                                phrase.motifs.end());
    phrases.push_back(std::move(phrase));
  }

  if (settings.syncopation_percent == 0) line = split_at_downbeats(line, meter);
  const LocalContext tail = conform_line(line, scale, meter, ctx.dynamics_level);

  const Tick cadence_start = static_cast<Tick>(body_measures) * measure;
  for (Note note : make_cadence(tail, scale, meter)) {
    note.onset += cadence_start;
    line.push_back(note);
  }

  Part part;
  part.kind = PartKind::Main;
  part.instrument = config.main_instrument;
  part.notes = std::move(line);
  return part;
}

}  // namespace tunesmith
