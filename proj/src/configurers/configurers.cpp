#include "configurers/configurers.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "configurers/words_data.h"

namespace tunesmith {

bool PieceConfig::has(PartKind kind) const {
  return std::find(parts.begin(), parts.end(), kind) != parts.end();
}

void PieceConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("invalid config: " + what); };
  if (!has(PartKind::Main)) fail("main part missing");
  if (has(PartKind::Accompaniment) && has(PartKind::Arpeggio)) {
    fail("accompaniment and arpeggio are exclusive");
  }
  auto percent = [&](int v, const char* name) {
    if (v < 0 || v > 100) fail(std::string(name) + " must be within 0..100");
  };
  percent(dissonance_percent, "dissonance_percent");
  percent(variation_percent, "variation_percent");
  percent(syncopation_percent, "syncopation_percent");
  percent(rest_percent, "rest_percent");
  if (measure_count < 1) fail("measure_count must be >= 1");
  if (tempo_bpm < 20 || tempo_bpm > 300) fail("tempo out of range");
  if (scale.tonic < 0 || scale.tonic > 11) fail("tonic must be 0..11");
  if (main_instrument < 0 || main_instrument > 127) fail("instrument must be 0..127");
}

std::vector<PartKind> normalize_parts(std::vector<PartKind> parts) {
  parts.push_back(PartKind::Main);
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  return parts;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_words(std::istream& in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (!line.empty()) words.push_back(line);
  }
  return words;
}

std::vector<std::string> split_words(const char* text) {
  std::istringstream in(text);
  return split_words(in);
}

std::vector<std::string> read_words(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open word list " + path);
  auto words = split_words(in);
  if (words.empty()) throw std::runtime_error("word list is empty: " + path);
  return words;
}

}  // namespace

const WordLists& WordLists::builtin() {
  static const WordLists lists{split_words(words_data::kBrightAdjectives),
                               split_words(words_data::kSadAdjectives),
                               split_words(words_data::kNouns)};
  return lists;
}

WordLists WordLists::load(const std::string& dir) {
  return WordLists{read_words(dir + "/adjectives_bright.txt"),
                   read_words(dir + "/adjectives_sad.txt"), read_words(dir + "/nouns.txt")};
}

// ---------------------------------------------------------------------------

std::vector<PartKind> configure_parts(RandomSource& rng, const PartProbabilities& odds) {
  std::vector<PartKind> parts{PartKind::Main};
  for (PartKind kind : kAllPartKinds) {
    if (kind == PartKind::Main) continue;
    if (kind == PartKind::Arpeggio &&
        std::find(parts.begin(), parts.end(), PartKind::Accompaniment) != parts.end()) {
      continue;
    }
    if (rng.chance_percent(odds[kind])) parts.push_back(kind);
  }
  return parts;
}

const ProbabilityTable& default_mode_table() {
  static const ProbabilityTable table("mode", {{"major", 35},
                                               {"minor", 35},
                                               {"lydian", 8},
                                               {"dorian", 8},
                                               {"phrygian", 7},
                                               {"mixolydian", 7}});
  return table;
}

Scale configure_scale(RandomSource& rng, const ProbabilityTable& modes) {
  const std::string& label = modes.sample(rng);
  auto mode = parse_mode(label);
  if (!mode) throw std::invalid_argument("mode table has unknown mode " + label);
  const int tonic = rng.uniform_int(0, 11);
  return Scale{tonic, *mode};
}

const ProbabilityTable& default_meter_table() {
  static const ProbabilityTable table(
      "meter", {{"4/4", 40}, {"3/4", 25}, {"2/4", 10}, {"6/8", 15}, {"5/8", 5}, {"7/8", 5}});
  return table;
}

Meter configure_meter(RandomSource& rng, const ProbabilityTable& meters) {
  const std::string& label = meters.sample(rng);
  auto meter = parse_meter(label);
  if (!meter) throw std::invalid_argument("meter table has unknown meter " + label);
  return *meter;
}

int configure_tempo(const Scale& /*scale*/, RandomSource& rng) {
  return rng.uniform_int(kMinTempo, kMaxTempo);
}

MeasureRange measure_count_range(const Meter& meter, int tempo_bpm) {
  if (tempo_bpm < 40 || tempo_bpm > 200) {
    throw std::invalid_argument("tempo must lie within 40..200 bpm");
  }
  // One measure lasts measure_ticks / ppq * 60 / bpm seconds, so the count
  // bounds for [60 s, 300 s] are ppq * bpm / measure_ticks × {1, 5}.
  const int64_t numerator = static_cast<int64_t>(kPpq) * tempo_bpm;
  const int64_t measure = meter.measure_ticks();
  MeasureRange range;
  range.min = static_cast<int>((numerator + measure - 1) / measure);
  range.max = static_cast<int>(5 * numerator / measure);
  if (range.min < 1) range.min = 1;
  if (range.min > range.max) {
    throw std::invalid_argument("no measure count gives a 1-5 minute piece");
  }
  return range;
}

int plan_length(const Meter& meter, int tempo_bpm, RandomSource& rng) {
  const auto range = measure_count_range(meter, tempo_bpm);
  return rng.uniform_int(range.min, range.max);
}

bool is_sad_mode(Mode mode) { return mode == Mode::NaturalMinor || mode == Mode::Phrygian; }

std::string generate_title(const Scale& scale, RandomSource& rng, const WordLists& words) {
  const auto& adjectives = is_sad_mode(scale.mode) ? words.sad : words.bright;
  if (adjectives.empty() || words.nouns.empty()) throw std::invalid_argument("empty word list");
  const auto& adjective = adjectives[static_cast<size_t>(
      rng.uniform_int(0, static_cast<int>(adjectives.size()) - 1))];
  const auto& noun =
      words.nouns[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(words.nouns.size()) - 1))];
  return adjective + " " + noun;
}

}  // namespace tunesmith
