// Command-line front end over the C API: compose, validate, analyze, batch.

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "tunesmith/tunesmith.h"

namespace {

constexpr int kExitClean = 0;
constexpr int kExitDiscrepancy = 1;
constexpr int kExitError = 2;

struct Failure {
  std::string message;
};

void check(ts_status status, const std::string& context) {
  if (status != TS_OK) throw Failure{context + ": " + ts_last_error()};
}

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { ts_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};

using Options = std::unique_ptr<ts_options, decltype(&ts_options_destroy)>;
using PiecePtr = std::unique_ptr<ts_piece, decltype(&ts_piece_destroy)>;
using ReportPtr = std::unique_ptr<ts_report, decltype(&ts_report_destroy)>;

struct ComposeFlags {
  std::optional<uint64_t> seed;
  std::optional<std::string> scale, meter, parts, title;
  std::optional<int> tempo, measures, instrument;
  std::optional<int> dissonance, variation, syncopation, rest;
  bool no_constraints = false;
  std::optional<std::string> interval_table, skip_table, length_table, words_dir;
  bool strict = false;
};

void add_compose_flags(CLI::App* cmd, ComposeFlags& f) {
  cmd->add_option("--scale", f.scale, "Scale as <tonic>:<mode>, e.g. C:major, F#:dorian");
  cmd->add_option("--meter", f.meter, "Meter: 2/4, 3/4, 4/4, 5/8, 6/8, 7/8");
  cmd->add_option("--tempo", f.tempo, "Tempo in quarter notes per minute")->check(CLI::Range(40, 200));
  cmd->add_option("--measures", f.measures, "Measure count (must give 60-300 s)")->check(CLI::PositiveNumber);
  cmd->add_option("--parts", f.parts, "Comma-separated part kinds (Main is always included)");
  cmd->add_option("--title", f.title, "Title");
  cmd->add_option("--instrument", f.instrument, "General MIDI program of the main part")
      ->check(CLI::Range(0, 127));
  cmd->add_option("--dissonance", f.dissonance, "Dissonance percent")->check(CLI::Range(0, 100));
  cmd->add_option("--variation", f.variation, "Variation percent")->check(CLI::Range(0, 100));
  cmd->add_option("--syncopation", f.syncopation, "Syncopation percent")->check(CLI::Range(0, 100));
  cmd->add_option("--rest", f.rest, "Percent of notes turned into rests by that variation")
      ->check(CLI::Range(0, 100));
  cmd->add_flag("--no-constraints", f.no_constraints, "Sample the tables with no melodic rules");
  cmd->add_option("--interval-table", f.interval_table, "Interval-type table file")->check(CLI::ExistingFile);
  cmd->add_option("--skip-table", f.skip_table, "Skip-interval table file")->check(CLI::ExistingFile);
  cmd->add_option("--length-table", f.length_table, "Note-length table file")->check(CLI::ExistingFile);
  cmd->add_option("--words-dir", f.words_dir, "Directory with title word lists")->check(CLI::ExistingDirectory);
  cmd->add_flag("--strict", f.strict, "Fail when validation reports a discrepancy");
}

Options make_options(const ComposeFlags& f, uint64_t seed) {
  ts_options* raw = nullptr;
  check(ts_options_create(&raw), "options");
  Options options(raw, &ts_options_destroy);
  auto set = [&](const char* key, const std::string& value) {
    check(ts_options_set(options.get(), key, value.c_str()), std::string("--") + key);
  };
  set("seed", std::to_string(seed));
  if (f.scale) set("scale", *f.scale);
  if (f.meter) set("meter", *f.meter);
  if (f.tempo) set("tempo", std::to_string(*f.tempo));
  if (f.measures) set("measures", std::to_string(*f.measures));
  if (f.parts) set("parts", *f.parts);
  if (f.title) set("title", *f.title);
  if (f.instrument) set("instrument", std::to_string(*f.instrument));
  if (f.dissonance) set("dissonance", std::to_string(*f.dissonance));
  if (f.variation) set("variation", std::to_string(*f.variation));
  if (f.syncopation) set("syncopation", std::to_string(*f.syncopation));
  if (f.rest) set("rest", std::to_string(*f.rest));
  if (f.no_constraints) set("constraints", "off");
  if (f.interval_table) set("interval_table", *f.interval_table);
  if (f.skip_table) set("skip_table", *f.skip_table);
  if (f.length_table) set("length_table", *f.length_table);
  if (f.words_dir) set("words_dir", *f.words_dir);
  return options;
}

uint64_t time_seed() {
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  return static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::microseconds>(now).count());
}

std::string json_path_for(const std::string& midi_path) {
  std::filesystem::path p(midi_path);
  p.replace_extension(".json");
  return p.string();
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure{"cannot write " + tmp};
    out << text;
    if (!out) throw Failure{"write failed for " + tmp};
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Failure{"cannot move output into place: " + path};
}

struct Counts {
  int unbalanced = 0;
  int out_of_scale = 0;
  int syncopated = 0;
  bool clean = true;
};

// Composes one piece and writes <out>.mid and <out>.json.
Counts compose_one(const ComposeFlags& f, uint64_t seed, const std::string& out_path,
                   std::vector<std::string>& report_lines) {
  Options options = make_options(f, seed);
  ts_piece* raw = nullptr;
  check(ts_compose(options.get(), &raw), "compose (seed " + std::to_string(seed) + ")");
  PiecePtr piece(raw, &ts_piece_destroy);

  check(ts_piece_write_midi(piece.get(), out_path.c_str()), "write " + out_path);
  OwnedString meta;
  check(ts_piece_metadata_json(piece.get(), &meta.s), "metadata");
  write_text_file(json_path_for(out_path), meta.str());

  ts_report* report_raw = nullptr;
  check(ts_piece_report(piece.get(), &report_raw), "report");
  ReportPtr report(report_raw, &ts_report_destroy);
  Counts counts;
  check(ts_report_counts(report.get(), &counts.unbalanced, &counts.out_of_scale, &counts.syncopated),
        "report");
  counts.clean = ts_report_clean(report.get()) != 0;
  OwnedString text;
  check(ts_report_text(report.get(), &text.s), "report");
  if (!text.str().empty()) report_lines.push_back(text.str());
  return counts;
}

int run_compose(const ComposeFlags& f, const std::optional<std::string>& output) {
  const uint64_t seed = f.seed.value_or(time_seed());
  const std::string out = output.value_or("piece-" + std::to_string(seed) + ".mid");
  std::vector<std::string> lines;
  const Counts counts = compose_one(f, seed, out, lines);
  std::cout << "seed " << seed << "\n" << "wrote " << out << " and " << json_path_for(out) << "\n";
  for (const auto& line : lines) std::cerr << (f.strict ? "" : "warning: ") << line << "\n";
  return (f.strict && !counts.clean) ? kExitDiscrepancy : kExitClean;
}

int run_validate(const std::string& path, const std::string& format,
                 const std::optional<std::string>& scale) {
  ts_report* raw = nullptr;
  const ts_status status = ts_validate_midi_file(path.c_str(), scale ? scale->c_str() : nullptr, &raw);
  if (status != TS_OK) {
    std::cerr << "error: " << ts_last_error() << "\n";
    return kExitError;
  }
  ReportPtr report(raw, &ts_report_destroy);
  OwnedString text;
  if (format == "json") {
    check(ts_report_json(report.get(), &text.s), "report");
    std::cout << text.str() << "\n";
  } else {
    check(ts_report_text(report.get(), &text.s), "report");
    if (!text.str().empty()) std::cout << text.str() << "\n";
  }
  return ts_report_clean(report.get()) ? kExitClean : kExitDiscrepancy;
}

int run_analyze(const std::string& dir, const std::string& tables_dir) {
  OwnedString stats;
  if (ts_analyze_directory(dir.c_str(), tables_dir.c_str(), &stats.s) != TS_OK) {
    std::cerr << "error: " << ts_last_error() << "\n";
    return kExitError;
  }
  std::cout << stats.str();
  std::cerr << "wrote interval.tbl, skip.tbl, length.tbl and stats.json to " << tables_dir << "\n";
  return kExitClean;
}

int run_batch(int n, const ComposeFlags& f, const std::string& out_dir) {
  const uint64_t start = f.seed.value_or(time_seed());
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Failure{"cannot create " + out_dir};
  long total_unbalanced = 0, total_out_of_scale = 0, total_syncopated = 0;
  int discrepant = 0;
  std::cout << "seed\tunbalanced\tout_of_scale\tsyncopated\n";
  for (int i = 0; i < n; ++i) {
    const uint64_t seed = start + static_cast<uint64_t>(i);
    const std::string path =
        (std::filesystem::path(out_dir) / ("piece-" + std::to_string(seed) + ".mid")).string();
    std::vector<std::string> lines;
    const Counts c = compose_one(f, seed, path, lines);
    std::cout << seed << "\t" << c.unbalanced << "\t" << c.out_of_scale << "\t" << c.syncopated << "\n";
    total_unbalanced += c.unbalanced;
    total_out_of_scale += c.out_of_scale;
    total_syncopated += c.syncopated;
    if (!c.clean) ++discrepant;
    if (f.strict && !c.clean) {
      for (const auto& line : lines) std::cerr << line << "\n";
      std::cerr << "strict mode: discrepancy at seed " << seed << "\n";
      return kExitDiscrepancy;
    }
  }
  std::cout << "total\t" << total_unbalanced << "\t" << total_out_of_scale << "\t" << total_syncopated
            << "\n";
  std::cout << "pieces " << n << ", seeds " << start << ".." << start + static_cast<uint64_t>(n) - 1
            << ", with discrepancies " << discrepant << "\n";
  return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tunesmith: compose, validate and analyze MIDI pieces"};
  app.set_version_flag("--version", std::string(ts_version()));
  app.require_subcommand(1);

  ComposeFlags compose_flags;
  std::optional<std::string> output;
  auto* compose = app.add_subcommand("compose", "Compose one piece (.mid plus .json metadata)");
  compose->add_option("--seed", compose_flags.seed, "Seed (default: derived from the clock)");
  compose->add_option("-o,--output", output, "Output .mid path (default piece-<seed>.mid)");
  add_compose_flags(compose, compose_flags);

  std::string validate_path;
  std::string format = "text";
  std::optional<std::string> validate_scale;
  auto* validate = app.add_subcommand("validate", "Check a .mid for unbalanced measures and out-of-scale notes");
  validate->add_option("path", validate_path, "MIDI file")->required();
  validate->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  validate->add_option("--scale", validate_scale, "Scale to check against (default: stored in the file)");

  std::string analyze_dir;
  std::string tables_dir = ".";
  auto* analyze = app.add_subcommand("analyze", "Derive probability tables from a directory of .mid files");
  analyze->add_option("dir", analyze_dir, "Corpus directory")->required();
  analyze->add_option("--tables", tables_dir, "Output directory for the tables and stats.json");

  int batch_count = 1;
  std::string batch_dir = ".";
  ComposeFlags batch_flags;
  auto* batch = app.add_subcommand("batch", "Compose n pieces with consecutive seeds");
  batch->add_option("n", batch_count, "Number of pieces")->required()->check(CLI::PositiveNumber);
  batch->add_option("--seed", batch_flags.seed, "First seed (default: derived from the clock)");
  batch->add_option("--out-dir", batch_dir, "Output directory");
  add_compose_flags(batch, batch_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (*compose) return run_compose(compose_flags, output);
    if (*validate) return run_validate(validate_path, format, validate_scale);
    if (*analyze) return run_analyze(analyze_dir, tables_dir);
    if (*batch) return run_batch(batch_count, batch_flags, batch_dir);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return kExitError;
  }
  return kExitError;
}
