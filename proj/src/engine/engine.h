// End-to-end composition: configuration draws, the main part, then every
// other part, then validation.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "configurers/configurers.h"
#include "core/model.h"
#include "distributions/tables.h"
#include "validator/validator.h"

namespace tunesmith {

struct ComposeRequest {
  uint64_t seed = 0;
  std::optional<std::vector<PartKind>> parts;
  std::optional<Scale> scale;
  std::optional<Meter> meter;
  std::optional<int> tempo_bpm;
  std::optional<int> measure_count;
  std::optional<std::string> title;
  int dissonance_percent = 5;
  int variation_percent = 40;
  int syncopation_percent = 5;
  int rest_percent = 20;
  bool constraints_enabled = true;
  int main_instrument = 0;
  GenerationTables tables = builtin_tables();
  PartProbabilities part_odds;
  std::optional<WordLists> words;
};

struct Composition {
  PieceConfig config;
  Piece piece;
  ValidationReport report;
};

/// Stream tag of the configuration draws; part streams use 1 + kind index.
inline constexpr uint64_t kConfigStream = 0;
uint64_t part_stream(PartKind kind);

/// Resolves the configuration. Draw order on the configuration stream:
/// parts, scale (mode, tonic), meter, tempo, length, title (adjective, noun);
/// an overridden step takes no draws.
PieceConfig configure(const ComposeRequest& request);

/// Composes and validates. Throws std::invalid_argument on an invalid
/// request (e.g. a measure count outside the 1-5 minute window).
Composition compose(const ComposeRequest& request);

/// Metadata document: seed, title, scale, meter, tempo_bpm, measures, parts,
/// report.
std::string metadata_json(const Composition& composition, int indent = 2);

}  // namespace tunesmith
