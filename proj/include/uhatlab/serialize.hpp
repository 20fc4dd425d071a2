#pragma once

#include <string>

#include "uhatlab/eval.hpp"
#include "uhatlab/program.hpp"

namespace uhatlab {

// Lossless JSON form of a recognizer: explicit variant tags everywhere,
// rationals as numerator/denominator decimal strings.
std::string program_to_json(const Recognizer& rec);
Recognizer program_from_json(const std::string& text);

// Machine-readable run report (layers, selected indices, verdict).
std::string trace_to_json(const Recognizer& rec, const Word& word, const RunTrace& trace);

} // namespace uhatlab
