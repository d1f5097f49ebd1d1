// Main-part generator: motifs grouped into phrases, repetition with
// variation, a rule-conforming pitch pass and the closing cadence.

#pragma once

#include <vector>

#include "configurers/configurers.h"
#include "core/model.h"
#include "core/random.h"
#include "distributions/tables.h"
#include "melody/context.h"
#include "melody/variations.h"

namespace tunesmith {

MelodySettings melody_settings(const PieceConfig& config);

/// Builds the main part spanning exactly config.measure_count measures.
///
/// With constraints enabled, the body is composed as phrases of 2-4 motifs
/// (1-2 measures each); motifs recur inside a phrase, earlier phrases are
/// replayed later, and recurring material is varied with
/// variation_percent once two measures exist. The assembled line is split at
/// downbeats when syncopation is off, then every pitch is re-checked against
/// the melodic rules, and the last measure is replaced by a cadence.
///
/// With constraints disabled, notes are raw draws from the interval and
/// length tables with no rules at all (used to test table fidelity).
Part generate_main_part(const PieceConfig& config, const GenerationTables& tables,
                        RandomSource& rng);

/// The closing measure: approach notes, a penultimate note on degree 2, 5 or
/// 7, and a long tonic starting on the last downbeat (or halfway through a
/// single-downbeat measure) and lasting to the bar line. Onsets are relative
/// to the measure start. `ctx` supplies the preceding pitches.
std::vector<Note> make_cadence(const LocalContext& ctx, const Scale& scale, const Meter& meter);

/// Splits every note that crosses a downbeat into two notes at that downbeat.
std::vector<Note> split_at_downbeats(const std::vector<Note>& notes, const Meter& meter);

/// Re-checks every pitch in order against the melodic rules (see
/// conform_pitch). Chromatic notes off the downbeat are left alone as
/// dissonances; chromatic notes on a downbeat are snapped into the scale.
/// Returns the context after the last note.
LocalContext conform_line(std::vector<Note>& notes, const Scale& scale, const Meter& meter,
                          int dynamics_level);

}  // namespace tunesmith
