// Small scale-aware pitch helpers used across generators.

#pragma once

#include "core/model.h"

namespace tunesmith {

/// Adjacent scale tone strictly above (direction > 0) or below. Works from
/// chromatic pitches too; the result is always 1 or 2 semitones away.
int scale_step(int pitch, int direction, const Scale& scale);

/// Moves an in-scale pitch by `degrees` scale steps. Chromatic pitches are
/// first snapped downward to a scale tone and keep their chromatic offset.
int shift_degrees(int pitch, int degrees, const Scale& scale);

/// Nearest in-scale pitch; on a tie the pitch in `prefer_direction` wins
/// (downward when prefer_direction <= 0).
int snap_to_scale(int pitch, const Scale& scale, int prefer_direction = -1);

/// First in-scale pitch at or beyond `pitch` walking in `direction`.
int snap_in_direction(int pitch, const Scale& scale, int direction);

/// First stable (tonic-triad) pitch at or beyond `pitch` walking in `direction`.
int stable_in_direction(int pitch, const Scale& scale, int direction);

/// Pitch with the given pitch class closest to `target` (ties go down).
int nearest_with_class(int pitch_class, int target);

/// Folds by octaves into [lo, hi]; hi - lo must be >= 11.
int fold_into(int pitch, int lo, int hi);

/// Signed count of scale steps from `reference` (an in-scale pitch) to
/// `pitch` (snapped down to the scale when chromatic).
int degree_distance(int reference, int pitch, const Scale& scale);

inline int sign(int v) { return (v > 0) - (v < 0); }

}  // namespace tunesmith
