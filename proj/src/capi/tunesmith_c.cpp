#include "tunesmith/tunesmith.h"

#include <charconv>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <new>
#include <sstream>
#include <string>
#include <string_view>

#include "analyzer/analyzer.h"
#include "engine/engine.h"
#include "midi/piece_io.h"
#include "validator/validator.h"

struct ts_options {
  tunesmith::ComposeRequest request;
};

struct ts_piece {
  tunesmith::Composition composition;
};

struct ts_report {
  tunesmith::ValidationReport report;
};

namespace {

thread_local std::string g_last_error;

class StatusError : public std::runtime_error {
 public:
  StatusError(ts_status status, const std::string& what) : std::runtime_error(what), status_(status) {}
  ts_status status() const { return status_; }

 private:
  ts_status status_;
};

template <typename Fn>
ts_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return TS_OK;
  } catch (const StatusError& e) {
    g_last_error = e.what();
    return e.status();
  } catch (const tunesmith::ParseError& e) {
    g_last_error = e.what();
    return TS_ERR_PARSE;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return TS_ERR_INVALID_ARGUMENT;
  } catch (const std::out_of_range& e) {
    g_last_error = e.what();
    return TS_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return TS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return TS_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw std::invalid_argument(std::string(what) + " must not be NULL");
}

char* copy_string(std::string_view s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

template <typename T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw std::invalid_argument(std::string(key) + ": not an integer: " + std::string(text));
  }
  return value;
}

int parse_percent(std::string_view key, std::string_view text) {
  const int v = parse_number<int>(key, text);
  if (v < 0 || v > 100) throw std::invalid_argument(std::string(key) + " must be within 0..100");
  return v;
}

std::vector<tunesmith::PartKind> parse_parts(std::string_view text) {
  std::vector<tunesmith::PartKind> parts;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    const auto item = text.substr(pos, comma - pos);
    if (!item.empty()) {
      const auto kind = tunesmith::parse_part_kind(item);
      if (!kind) throw std::invalid_argument("unknown part kind: " + std::string(item));
      parts.push_back(*kind);
    }
    pos = comma + 1;
  }
  return parts;
}

tunesmith::ProbabilityTable load_table_checked(const std::string& path) {
  std::ifstream probe(path);
  if (!probe) throw StatusError(TS_ERR_IO, "cannot open table file " + path);
  return tunesmith::load_table(path);
}

tunesmith::Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StatusError(TS_ERR_IO, "cannot open " + path);
  return tunesmith::Bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file_atomic(const std::string& path, std::string_view data) {
  namespace fs = std::filesystem;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StatusError(TS_ERR_IO, "cannot write " + tmp);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) throw StatusError(TS_ERR_IO, "write failed for " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw StatusError(TS_ERR_IO, "cannot move output into place: " + path);
  }
}

}  // namespace

extern "C" {

const char* ts_version(void) { return "1.0.0"; }

const char* ts_last_error(void) { return g_last_error.c_str(); }

void ts_string_free(char* s) { std::free(s); }

ts_status ts_options_create(ts_options** out) {
  return guarded([&] {
    require(out, "out");
    *out = new ts_options();
  });
}

void ts_options_destroy(ts_options* options) { delete options; }

ts_status ts_options_set(ts_options* options, const char* key_c, const char* value_c) {
  return guarded([&] {
    require(options, "options");
    require(key_c, "key");
    require(value_c, "value");
    const std::string_view key(key_c);
    const std::string value(value_c);
    auto& r = options->request;
    if (key == "seed") {
      r.seed = parse_number<uint64_t>(key, value);
    } else if (key == "scale") {
      r.scale = tunesmith::parse_scale(value);
      if (!r.scale) throw std::invalid_argument("scale: expected <tonic>:<mode>, got " + value);
    } else if (key == "meter") {
      r.meter = tunesmith::parse_meter(value);
      if (!r.meter) throw std::invalid_argument("meter: expected <n>/<4|8>, got " + value);
    } else if (key == "tempo") {
      r.tempo_bpm = parse_number<int>(key, value);
      if (*r.tempo_bpm < 40 || *r.tempo_bpm > 200) throw std::invalid_argument("tempo must be within 40..200");
    } else if (key == "measures") {
      r.measure_count = parse_number<int>(key, value);
      if (*r.measure_count < 1) throw std::invalid_argument("measures must be >= 1");
    } else if (key == "parts") {
      r.parts = parse_parts(value);
    } else if (key == "title") {
      r.title = value;
    } else if (key == "dissonance") {
      r.dissonance_percent = parse_percent(key, value);
    } else if (key == "variation") {
      r.variation_percent = parse_percent(key, value);
    } else if (key == "syncopation") {
      r.syncopation_percent = parse_percent(key, value);
    } else if (key == "rest") {
      r.rest_percent = parse_percent(key, value);
    } else if (key == "constraints") {
      if (value != "on" && value != "off") throw std::invalid_argument("constraints: expected on or off");
      r.constraints_enabled = value == "on";
    } else if (key == "instrument") {
      r.main_instrument = parse_number<int>(key, value);
      if (r.main_instrument < 0 || r.main_instrument > 127) {
        throw std::invalid_argument("instrument must be within 0..127");
      }
    } else if (key == "interval_table") {
      auto table = load_table_checked(value);
      tunesmith::require_interval_labels(table);
      r.tables.interval = std::move(table);
    } else if (key == "skip_table") {
      auto table = load_table_checked(value);
      tunesmith::require_skip_labels(table);
      r.tables.skip = std::move(table);
    } else if (key == "length_table") {
      auto table = load_table_checked(value);
      tunesmith::require_length_labels(table);
      r.tables.length = std::move(table);
    } else if (key == "words_dir") {
      if (!std::filesystem::is_directory(value)) throw StatusError(TS_ERR_IO, "not a directory: " + value);
      r.words = tunesmith::WordLists::load(value);
    } else {
      throw std::invalid_argument("unknown option: " + std::string(key));
    }
  });
}

ts_status ts_compose(const ts_options* options, ts_piece** out) {
  return guarded([&] {
    require(options, "options");
    require(out, "out");
    *out = new ts_piece{tunesmith::compose(options->request)};
  });
}

void ts_piece_destroy(ts_piece* piece) { delete piece; }

uint64_t ts_piece_seed(const ts_piece* piece) {
  return piece == nullptr ? 0 : piece->composition.piece.seed;
}

ts_status ts_piece_write_midi(const ts_piece* piece, const char* path) {
  return guarded([&] {
    require(piece, "piece");
    require(path, "path");
    const auto bytes = tunesmith::write_smf(piece->composition.piece);
    write_file_atomic(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
  });
}

ts_status ts_piece_midi_bytes(const ts_piece* piece, char** data, size_t* size) {
  return guarded([&] {
    require(piece, "piece");
    require(data, "data");
    require(size, "size");
    const auto bytes = tunesmith::write_smf(piece->composition.piece);
    *data = copy_string(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
    *size = bytes.size();
  });
}

ts_status ts_piece_metadata_json(const ts_piece* piece, char** out) {
  return guarded([&] {
    require(piece, "piece");
    require(out, "out");
    *out = copy_string(tunesmith::metadata_json(piece->composition) + "\n");
  });
}

ts_status ts_piece_report(const ts_piece* piece, ts_report** out) {
  return guarded([&] {
    require(piece, "piece");
    require(out, "out");
    *out = new ts_report{piece->composition.report};
  });
}

ts_status ts_validate_midi_file(const char* path, const char* scale, ts_report** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    std::optional<tunesmith::Scale> override_scale;
    if (scale != nullptr) {
      override_scale = tunesmith::parse_scale(scale);
      if (!override_scale) throw std::invalid_argument(std::string("scale: cannot parse ") + scale);
    }
    const auto bytes = read_file(path);
    tunesmith::Piece piece = tunesmith::piece_from_smf(tunesmith::read_smf(bytes));
    if (override_scale) piece.scale = *override_scale;
    if (piece.id.empty()) piece.id = std::filesystem::path(path).stem().string();
    *out = new ts_report{tunesmith::validate(piece)};
  });
}

void ts_report_destroy(ts_report* report) { delete report; }

int ts_report_clean(const ts_report* report) {
  return report != nullptr && report->report.clean() ? 1 : 0;
}

ts_status ts_report_counts(const ts_report* report, int* unbalanced_measures, int* out_of_scale,
                           int* syncopated) {
  return guarded([&] {
    require(report, "report");
    if (unbalanced_measures) {
      *unbalanced_measures = static_cast<int>(report->report.unbalanced_measures.size());
    }
    if (out_of_scale) *out_of_scale = report->report.out_of_scale_count;
    if (syncopated) *syncopated = report->report.syncopated_note_count;
  });
}

ts_status ts_report_text(const ts_report* report, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    std::string text;
    for (const auto& line : tunesmith::render_report(report->report)) {
      if (!text.empty()) text += '\n';
      text += line;
    }
    *out = copy_string(text);
  });
}

ts_status ts_report_json(const ts_report* report, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = copy_string(tunesmith::report_to_json(report->report));
  });
}

ts_status ts_analyze_directory(const char* dir, const char* out_dir, char** stats_json) {
  return guarded([&] {
    require(dir, "dir");
    require(out_dir, "out_dir");
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw StatusError(TS_ERR_IO, std::string("not a directory: ") + dir);
    const auto files = tunesmith::list_midi_files(dir);
    if (files.empty()) throw StatusError(TS_ERR_IO, std::string("no .mid files in ") + dir);
    tunesmith::CorpusStats stats;
    try {
      stats = tunesmith::analyze_corpus(files);
    } catch (const std::runtime_error& e) {
      throw StatusError(TS_ERR_PARSE, e.what());
    }
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw StatusError(TS_ERR_IO, std::string("cannot create ") + out_dir);
    const fs::path base(out_dir);
    write_file_atomic((base / "interval.tbl").string(), tunesmith::format_table(stats.interval_table()));
    write_file_atomic((base / "skip.tbl").string(), tunesmith::format_table(stats.skip_table()));
    write_file_atomic((base / "length.tbl").string(), tunesmith::format_table(stats.length_table()));
    const std::string json = tunesmith::stats_to_json(stats) + "\n";
    write_file_atomic((base / "stats.json").string(), json);
    if (stats_json) *stats_json = copy_string(json);
  });
}

}  // extern "C"
