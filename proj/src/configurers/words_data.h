#pragma once

// Contents of data/*.txt, generated at configure time (words_data.cpp.in).
namespace tunesmith::words_data {
extern const char* const kBrightAdjectives;
extern const char* const kSadAdjectives;
extern const char* const kNouns;
}  // namespace tunesmith::words_data
