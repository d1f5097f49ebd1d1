#include "engine/engine.h"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "harmony/harmony.h"
#include "melody/melody.h"
#include "parts/aux_parts.h"

namespace tunesmith {

uint64_t part_stream(PartKind kind) { return 1 + static_cast<uint64_t>(kind); }

PieceConfig configure(const ComposeRequest& request) {
  RandomSource rng = RandomSource(request.seed).fork(kConfigStream);
  PieceConfig config;
  config.parts = request.parts ? normalize_parts(*request.parts)
                               : configure_parts(rng, request.part_odds);
  config.scale = request.scale ? *request.scale : configure_scale(rng);
  config.meter = request.meter ? *request.meter : configure_meter(rng);
  config.tempo_bpm = request.tempo_bpm ? *request.tempo_bpm : configure_tempo(config.scale, rng);
  if (request.measure_count) {
    config.measure_count = *request.measure_count;
    const double seconds = duration_seconds(config.tempo_bpm, config.meter, config.measure_count);
    if (seconds < 60.0 || seconds > 300.0) {
      const auto range = measure_count_range(config.meter, config.tempo_bpm);
      throw std::invalid_argument("measure count " + std::to_string(config.measure_count) +
                                  " gives " + std::to_string(seconds) +
                                  " s; allowed range at this tempo and meter is " +
                                  std::to_string(range.min) + ".." + std::to_string(range.max));
    }
  } else {
    config.measure_count = plan_length(config.meter, config.tempo_bpm, rng);
  }
  const WordLists& words = request.words ? *request.words : WordLists::builtin();
  config.title = request.title ? *request.title : generate_title(config.scale, rng, words);
  config.dissonance_percent = request.dissonance_percent;
  config.variation_percent = request.variation_percent;
  config.syncopation_percent = request.syncopation_percent;
  config.rest_percent = request.rest_percent;
  config.constraints_enabled = request.constraints_enabled;
  config.main_instrument = request.main_instrument;
  config.validate();
  return config;
}

Composition compose(const ComposeRequest& request) {
  require_interval_labels(request.tables.interval);
  require_skip_labels(request.tables.skip);
  require_length_labels(request.tables.length);

  Composition out;
  out.config = configure(request);
  const PieceConfig& config = out.config;
  const RandomSource root(request.seed);

  Piece& piece = out.piece;
  piece.id = std::to_string(request.seed);
  piece.seed = request.seed;
  piece.title = config.title;
  piece.scale = config.scale;
  piece.meter = config.meter;
  piece.tempo_bpm = config.tempo_bpm;
  piece.measure_count = config.measure_count;

  RandomSource main_rng = root.fork(part_stream(PartKind::Main));
  piece.parts.push_back(generate_main_part(config, request.tables, main_rng));

  std::vector<Part> others;
  for (PartKind kind : config.parts) {
    if (kind == PartKind::Main) continue;
    RandomSource rng = root.fork(part_stream(kind));
    if (kind == PartKind::Accompaniment || kind == PartKind::Arpeggio) {
      others.push_back(
          generate_accompaniment(piece.main(), config, rng, kind == PartKind::Arpeggio));
    } else {
      others.push_back(generate_aux_part(kind, piece, rng));
    }
  }
  piece.parts.insert(piece.parts.end(), others.begin(), others.end());

  check_piece_invariants(piece);
  out.report = validate(piece);
  return out;
}

std::string metadata_json(const Composition& composition, int indent) {
  const Piece& piece = composition.piece;
  std::vector<std::string> parts;
  for (const auto& part : piece.parts) parts.emplace_back(to_string(part.kind));
  nlohmann::ordered_json j;
  j["seed"] = piece.seed;
  j["title"] = piece.title;
  j["scale"] = to_string(piece.scale);
  j["meter"] = to_string(piece.meter);
  j["tempo_bpm"] = piece.tempo_bpm;
  j["measures"] = piece.measure_count;
  j["parts"] = parts;
  j["report"] = nlohmann::ordered_json::parse(report_to_json(composition.report, -1));
  return j.dump(indent);
}

}  // namespace tunesmith
