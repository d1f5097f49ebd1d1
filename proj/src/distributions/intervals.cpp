#include "distributions/intervals.h"

#include <cstdlib>
#include <stdexcept>

#include "core/pitch_ops.h"

namespace tunesmith {

IntervalKind parse_interval_kind(std::string_view label) {
  if (label == "Unison") return IntervalKind::Unison;
  if (label == "Octave") return IntervalKind::Octave;
  if (label == "Step") return IntervalKind::Step;
  if (label == "Skip") return IntervalKind::Skip;
  throw std::invalid_argument("unknown interval label " + std::string(label));
}

SkipKind parse_skip_kind(std::string_view label) {
  if (label == "PerfectFifth") return SkipKind::PerfectFifth;
  if (label == "PerfectFourth") return SkipKind::PerfectFourth;
  if (label == "Third") return SkipKind::Third;
  if (label == "Sixth") return SkipKind::Sixth;
  throw std::invalid_argument("unknown skip label " + std::string(label));
}

IntervalChoice sample_interval(const GenerationTables& tables, RandomSource& rng) {
  IntervalChoice choice;
  choice.kind = parse_interval_kind(tables.interval.sample(rng));
  if (choice.kind == IntervalKind::Skip) choice.skip = parse_skip_kind(tables.skip.sample(rng));
  return choice;
}

namespace {

// Magnitude of the interval for one direction, before range handling.
int magnitude(const IntervalChoice& choice, int from, int dir, const Scale& scale, bool snap) {
  auto lands = [&](int size) { return in_scale(from + dir * size, scale); };
  // Fixed-size intervals snap onto the scale, preferring the chosen direction
  // while keeping within an octave.
  auto fixed = [&](int size) {
    if (!snap || lands(size)) return size;
    for (int k = 1; k <= 2; ++k) {
      if (size + k <= 12 && lands(size + k)) return size + k;
      if (lands(size - k)) return size - k;
    }
    return size;
  };
  switch (choice.kind) {
    case IntervalKind::Unison:
      return 0;
    case IntervalKind::Octave:
      return fixed(12);
    case IntervalKind::Step:
      return std::abs(scale_step(from, dir, scale) - from);
    case IntervalKind::Skip:
      break;
  }
  if (!choice.skip) throw std::invalid_argument("skip interval without skip kind");
  switch (*choice.skip) {
    case SkipKind::PerfectFifth:
      return fixed(7);
    case SkipKind::PerfectFourth:
      return fixed(5);
    // Diatonic scales never have two adjacent chromatic semitones, so one of
    // the two qualities always lands.
    case SkipKind::Third:
      return lands(4) ? 4 : 3;
    case SkipKind::Sixth:
      return lands(9) ? 9 : 8;
  }
  return 0;
}

}  // namespace

int interval_semitones(const IntervalChoice& choice, Pitch from, const Scale& scale,
                       bool snap_fixed) {
  if (!from.valid()) throw std::invalid_argument("interval_semitones: pitch out of range");
  if (choice.kind == IntervalKind::Skip && !choice.skip) {
    throw std::invalid_argument("interval_semitones: skip without skip kind");
  }
  int dir = choice.direction == Direction::Up ? 1 : -1;
  int delta = dir * magnitude(choice, from.midi, dir, scale, snap_fixed);
  if (from.midi + delta > 127 || from.midi + delta < 0) {
    dir = -dir;
    delta = dir * magnitude(choice, from.midi, dir, scale, snap_fixed);
  }
  return delta;
}

}  // namespace tunesmith
