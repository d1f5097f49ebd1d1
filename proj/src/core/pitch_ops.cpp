#include "core/pitch_ops.h"

#include <cstdlib>
#include <stdexcept>

namespace tunesmith {

int scale_step(int pitch, int direction, const Scale& scale) {
  const int dir = direction >= 0 ? 1 : -1;
  int candidate = pitch + dir;
  while (!in_scale(candidate, scale)) candidate += dir;
  return candidate;
}

int shift_degrees(int pitch, int degrees, const Scale& scale) {
  int base = pitch;
  while (!in_scale(base, scale)) --base;
  const int chromatic = pitch - base;
  const int dir = degrees >= 0 ? 1 : -1;
  for (int i = 0; i < std::abs(degrees); ++i) base = scale_step(base, dir, scale);
  return base + chromatic;
}

int snap_to_scale(int pitch, const Scale& scale, int prefer_direction) {
  if (in_scale(pitch, scale)) return pitch;
  const int first = prefer_direction > 0 ? 1 : -1;
  for (int distance = 1; distance < 12; ++distance) {
    if (in_scale(pitch + first * distance, scale)) return pitch + first * distance;
    if (in_scale(pitch - first * distance, scale)) return pitch - first * distance;
  }
  return pitch;
}

int snap_in_direction(int pitch, const Scale& scale, int direction) {
  const int dir = direction >= 0 ? 1 : -1;
  while (!in_scale(pitch, scale)) pitch += dir;
  return pitch;
}

int stable_in_direction(int pitch, const Scale& scale, int direction) {
  const int dir = direction >= 0 ? 1 : -1;
  while (!is_stable(Pitch(pitch), scale)) pitch += dir;
  return pitch;
}

int nearest_with_class(int pitch_class, int target) {
  const int pc = ((pitch_class % 12) + 12) % 12;
  int below = target - (((target - pc) % 12) + 12) % 12;
  int above = below + 12;
  if (below == target) return target;
  return (target - below) <= (above - target) ? below : above;
}

int fold_into(int pitch, int lo, int hi) {
  if (hi - lo < 11) throw std::invalid_argument("fold_into: range narrower than an octave");
  while (pitch < lo) pitch += 12;
  while (pitch > hi) pitch -= 12;
  return pitch;
}

int degree_distance(int reference, int pitch, const Scale& scale) {
  int target = pitch;
  while (!in_scale(target, scale)) --target;
  int steps = 0;
  int cursor = reference;
  const int dir = target >= reference ? 1 : -1;
  while (cursor != target) {
    cursor = scale_step(cursor, dir, scale);
    steps += dir;
  }
  return steps;
}

}  // namespace tunesmith
