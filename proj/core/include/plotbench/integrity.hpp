#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plotbench/config.hpp"

namespace plotbench {

// Per-response parse outcome, repair log, key accounting, and BLEU-4.
struct IntegrityReport {
    bool strict_parse_ok = false;
    bool repaired_parse_ok = false;       // strict failed, repair succeeded
    std::vector<std::string> repair_log;  // fixes applied, in order
    std::vector<std::string> missing_keys;
    std::vector<std::string> extra_keys;  // flagged, never counted as missing
    std::optional<double> key_missing_rate;
    std::optional<double> bleu4;
    std::optional<json> doc;  // parsed document when either parse succeeded
    std::string parse_error;  // first strict-parse error, for diagnostics
};

// First fenced code block if present, else first '{' through its balanced
// closing brace (string-aware), else nullopt when the text has no '{'.
std::optional<std::string> extract_json(const std::string& response);

struct ParseOutcome {
    bool ok = false;
    json doc;
    std::string error;
    std::size_t error_byte = 0;
};

// Standard-conformant parse; any deviation is a syntax error.
ParseOutcome strict_parse(const std::string& text);

// Text-level repair pipeline: strip trailing commas, balance closing
// braces/brackets, strip control characters inside strings. Returns the input
// unchanged (and logs nothing) if it already parses.
std::string repair_text(const std::string& text, std::vector<std::string>* log = nullptr);

struct RepairOutcome {
    bool ok = false;  // repaired text strict-parses
    json doc;
    std::vector<std::string> log;
    std::string repaired_text;
    std::string original_text;  // preserved on failure
};

RepairOutcome repair_parse(const std::string& text);

struct KeyMissingResult {
    std::vector<std::string> missing;
    std::vector<std::string> extra;
    double rate = 0.0;  // |missing| / |truth keys|
};

KeyMissingResult key_missing(const json& target, const std::vector<std::string>& truth_keys);

// Whitespace-delimited tokens with each of { } [ ] , : " emitted as its own
// token, so structure counts toward n-gram overlap.
std::vector<std::string> bleu_tokenize(const std::string& text);

// Geometric mean of clipped 1..4-gram precisions times the brevity penalty.
// Zero precisions are add-epsilon smoothed (1e-9 inside the log); the result
// is clamped to [0, 1]. Empty candidate scores 0.
double bleu4(const std::string& candidate, const std::string& reference);

// Full integrity pass for one raw model response against the ground-truth key
// set and reference text. BLEU is scored on the extracted JSON text.
IntegrityReport assess_integrity(const std::string& raw_response,
                                 const std::vector<std::string>& truth_keys,
                                 const std::string& reference_text);

}  // namespace plotbench
