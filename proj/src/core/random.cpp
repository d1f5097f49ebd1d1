#include "core/random.h"

#include <cmath>
#include <stdexcept>

namespace tunesmith {

namespace {
constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr double kTwoPowMinus53 = 1.0 / 9007199254740992.0;
}  // namespace

uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RandomSource::RandomSource(uint64_t seed) : seed_(seed), state_(seed) {}

RandomSource RandomSource::replay(std::vector<double> units) {
  if (units.empty()) throw std::invalid_argument("replay needs at least one value");
  for (double u : units) {
    if (!(u >= 0.0 && u < 1.0)) throw std::invalid_argument("replay values must lie in [0, 1)");
  }
  RandomSource source(0);
  source.script_ = std::move(units);
  return source;
}

uint64_t RandomSource::next_u64() {
  if (!script_.empty()) {
    double u = next_unit();
    return static_cast<uint64_t>(std::ldexp(u, 64));
  }
  state_ += kGolden;
  return mix64(state_);
}

double RandomSource::next_unit() {
  if (!script_.empty()) {
    double u = script_[script_pos_];
    script_pos_ = (script_pos_ + 1) % script_.size();
    return u;
  }
  return static_cast<double>(next_u64() >> 11) * kTwoPowMinus53;
}

int RandomSource::uniform_int(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const int64_t span = static_cast<int64_t>(hi) - lo + 1;
  auto offset = static_cast<int64_t>(std::floor(next_unit() * static_cast<double>(span)));
  if (offset >= span) offset = span - 1;
  return static_cast<int>(lo + offset);
}

bool RandomSource::chance_percent(double percent) { return next_unit() * 100.0 < percent; }

RandomSource RandomSource::fork(uint64_t stream) const {
  return RandomSource(mix64(seed_ ^ mix64(stream + kGolden)));
}

}  // namespace tunesmith
