/* tunesmith: hybrid rule/probability composer producing Standard MIDI Files.
 *
 * Every function returns a ts_status. On failure a message describing the
 * last error of the calling thread is available from ts_last_error().
 * Objects are opaque and released with their matching *_destroy function;
 * strings returned through char** are released with ts_string_free. */

#ifndef TUNESMITH_TUNESMITH_H_
#define TUNESMITH_TUNESMITH_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(TUNESMITH_BUILDING)
#define TS_API __declspec(dllexport)
#else
#define TS_API __declspec(dllimport)
#endif
#else
#define TS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ts_status {
  TS_OK = 0,
  TS_ERR_INVALID_ARGUMENT = 1,
  TS_ERR_IO = 2,
  TS_ERR_PARSE = 3,
  TS_ERR_VALIDATION = 4,
  TS_ERR_INTERNAL = 5
} ts_status;

typedef struct ts_options ts_options;
typedef struct ts_piece ts_piece;
typedef struct ts_report ts_report;

TS_API const char* ts_version(void);

/* Message of the last failed call on this thread ("" when none). */
TS_API const char* ts_last_error(void);

TS_API void ts_string_free(char* s);

/* ---- options ---------------------------------------------------------- */

TS_API ts_status ts_options_create(ts_options** out);
TS_API void ts_options_destroy(ts_options* options);

/* Keys (values are text):
 *   seed          unsigned 64-bit integer
 *   scale         "<tonic>:<mode>", e.g. "F#:dorian"
 *   meter         "<n>/<d>", d in {4, 8}
 *   tempo         quarter notes per minute
 *   measures      measure count
 *   parts         comma-separated part kinds; Main is always added
 *   title         piece title
 *   dissonance, variation, syncopation, rest
 *                 percentages 0..100
 *   constraints   "on" or "off" (off = raw table sampling test mode)
 *   instrument    General MIDI program of the main part
 *   interval_table, skip_table, length_table
 *                 paths of table files
 *   words_dir     directory with adjectives_bright.txt, adjectives_sad.txt
 *                 and nouns.txt */
TS_API ts_status ts_options_set(ts_options* options, const char* key, const char* value);

/* ---- composition ------------------------------------------------------ */

TS_API ts_status ts_compose(const ts_options* options, ts_piece** out);
TS_API void ts_piece_destroy(ts_piece* piece);

TS_API uint64_t ts_piece_seed(const ts_piece* piece);

/* Writes the .mid atomically (temporary file, then rename). */
TS_API ts_status ts_piece_write_midi(const ts_piece* piece, const char* path);

/* Standard MIDI File bytes; release with ts_string_free. */
TS_API ts_status ts_piece_midi_bytes(const ts_piece* piece, char** data, size_t* size);

/* JSON with seed, title, scale, meter, tempo_bpm, measures, parts, report. */
TS_API ts_status ts_piece_metadata_json(const ts_piece* piece, char** out);

/* Validation report of the composed piece (caller destroys). */
TS_API ts_status ts_piece_report(const ts_piece* piece, ts_report** out);

/* ---- validation ------------------------------------------------------- */

/* Reads a .mid and validates it. scale may be NULL to use the scale stored
 * in the file (C major when absent). */
TS_API ts_status ts_validate_midi_file(const char* path, const char* scale, ts_report** out);

TS_API void ts_report_destroy(ts_report* report);

/* 1 when there are no unbalanced measures and no out-of-scale notes. */
TS_API int ts_report_clean(const ts_report* report);

TS_API ts_status ts_report_counts(const ts_report* report, int* unbalanced_measures,
                                  int* out_of_scale, int* syncopated);

/* Report lines joined with '\n' (empty string when clean). */
TS_API ts_status ts_report_text(const ts_report* report, char** out);

TS_API ts_status ts_report_json(const ts_report* report, char** out);

/* ---- analysis --------------------------------------------------------- */

/* Analyzes the .mid files in dir and writes interval.tbl, skip.tbl,
 * length.tbl and stats.json into out_dir (created when missing). The stats
 * document is also returned through stats_json when it is not NULL. */
TS_API ts_status ts_analyze_directory(const char* dir, const char* out_dir, char** stats_json);

#ifdef __cplusplus
}
#endif

#endif /* TUNESMITH_TUNESMITH_H_ */
