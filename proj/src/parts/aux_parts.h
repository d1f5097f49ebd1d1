// Auxiliary parts. Each generator reads the finished main part (through the
// piece) and draws only from its own random stream.

#pragma once

#include <array>
#include <vector>

#include "core/model.h"
#include "core/random.h"

namespace tunesmith {

namespace gm {
inline constexpr int kAcousticBass = 32;
inline constexpr int kCello = 42;
inline constexpr int kTimpani = 47;
inline constexpr int kWarmPad = 89;
inline constexpr int kTubularBells = 14;
inline constexpr int kSeashore = 122;
inline constexpr int kBirdTweet = 123;
inline constexpr int kApplause = 126;

inline constexpr int kKick = 36;
inline constexpr int kSnare = 38;
inline constexpr int kClosedHat = 42;
}  // namespace gm

inline constexpr std::array<int, 4> kEffectPrograms = {gm::kBirdTweet, gm::kTubularBells,
                                                       gm::kApplause, gm::kSeashore};

struct PercussionSlot {
  Tick offset = 0;
  bool hit = false;
  int drum = gm::kKick;

  friend bool operator==(const PercussionSlot&, const PercussionSlot&) = default;
};

struct PercussionPattern {
  std::vector<PercussionSlot> slots;
};

inline constexpr int kDownbeatHitPercent = 60;
inline constexpr int kOffbeatHitPercent = 20;

/// One slot per eighth note. Downbeat slots hit 60% of the time with a kick;
/// other slots hit 20% of the time with a hi-hat or snare (50/50).
PercussionPattern sample_percussion_pattern(const Meter& meter, RandomSource& rng);

/// Tones of one or two measures on the tonic or the I/IV/V roots, below the
/// melody, at 60% of the main part's mean velocity.
Part generate_pads(const Piece& piece, RandomSource& rng);

/// Kick on the first downbeat of every measure, snare on the others.
Part generate_simple_beat(const Piece& piece, RandomSource& rng);

/// One sampled pattern repeated in every measure.
Part generate_percussion(const Piece& piece, RandomSource& rng);

/// One note per downbeat lasting to the next one, on degree 1, 5 or 3
/// (50/30/20) two octaves below the main-part median.
Part generate_bass(const Piece& piece, RandomSource& rng);

/// The tonic in quarter notes through every measure.
Part generate_drone(const Piece& piece, RandomSource& rng);

/// Rhythmic cells of the timpani part, in ticks. Pitches alternate between
/// the tonic and the dominant.
const std::array<std::vector<Tick>, 3>& timpani_cells();

/// One of three cells in k distinct measures, k uniform in
/// [1, ceil(measure_count / 10)].
Part generate_timpani(const Piece& piece, RandomSource& rng);

/// Up to four effect notes at random ticks, each switching to an effect
/// program (bird tweet, tubular bells, applause, seashore).
Part generate_effects(const Piece& piece, RandomSource& rng);

/// Dispatches on kind; Main, Accompaniment and Arpeggio are not handled here.
Part generate_aux_part(PartKind kind, const Piece& piece, RandomSource& rng);

}  // namespace tunesmith
