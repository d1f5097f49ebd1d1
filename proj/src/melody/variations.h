// The eight motif variation operators.

#pragma once

#include <array>
#include <string_view>

#include "core/model.h"
#include "core/random.h"
#include "distributions/tables.h"
#include "melody/context.h"

namespace tunesmith {

enum class VariationKind {
  Transposition,
  Inversion,
  VaryEnding,
  VaryBase,
  Retrograde,
  KeyChange,
  NotesToRests,
  MultiplyPitches
};

inline constexpr std::array<VariationKind, 8> kAllVariations = {
    VariationKind::Transposition, VariationKind::Inversion,  VariationKind::VaryEnding,
    VariationKind::VaryBase,      VariationKind::Retrograde, VariationKind::KeyChange,
    VariationKind::NotesToRests,  VariationKind::MultiplyPitches};

std::string_view to_string(VariationKind kind);

/// Everything a variation may need besides the motif itself.
struct VariationEnv {
  const Scale& scale;
  const Meter& meter;
  const GenerationTables& tables;
  const MelodySettings& settings;
  int dynamics_level = 80;
};

/// Uniform over the eight kinds (one draw).
VariationKind select_variation(RandomSource& rng);

/// Applies one operator. Every kind preserves the motif's total duration and
/// its tiling of the measure grid.
///
///  Transposition    every pitch moves k scale degrees, k in ±1..±3
///  Inversion        intervals mirrored around the first pitch, snapped to scale
///  VaryEnding       the last ceil(25%) notes are regenerated
///  VaryBase         notes starting on downbeats are kept, the rest regenerated
///  Retrograde       notes played backwards, onsets recomputed from the end
///  KeyChange        melody moved to the key a fifth up or down (same mode),
///                   then snapped back onto the piece's scale
///  NotesToRests     each off-downbeat note becomes a rest with rest_percent
///  MultiplyPitches  degree offsets from the tonic multiplied by 2 or 3,
///                   folded into the melody range
Motif apply_variation(const Motif& motif, VariationKind kind, const VariationEnv& env,
                      RandomSource& rng);

// Deterministic building blocks, exposed for tests.
Motif transpose_motif(const Motif& motif, int degrees, const Scale& scale);
Motif invert_motif(const Motif& motif, const Scale& scale);
Motif retrograde_motif(const Motif& motif);
Motif change_key(const Motif& motif, int semitones, const Scale& scale);
Motif multiply_pitches(const Motif& motif, int factor, const Scale& scale);

/// Total notated duration of the motif's events.
Tick motif_duration(const Motif& motif);

}  // namespace tunesmith
