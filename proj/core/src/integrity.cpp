#include "plotbench/integrity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <unordered_map>

namespace plotbench {

namespace {

// Scanner that tracks whether position i sits inside a JSON string literal.
// in_string is toggled on unescaped double quotes.
struct StringTracker {
    bool in_string = false;
    bool escaped = false;

    void feed(char c) {
        if (in_string) {
            if (escaped) {
                escaped = false;
            } else if (c == '\\') {
                escaped = true;
            } else if (c == '"') {
                in_string = false;
            }
        } else if (c == '"') {
            in_string = true;
        }
    }
};

std::optional<std::string> fenced_block(const std::string& s) {
    const std::string fence = "```";
    const std::size_t open = s.find(fence);
    if (open == std::string::npos) return std::nullopt;
    std::size_t body = open + fence.size();
    // skip an info string like "json" up to end of line
    const std::size_t eol = s.find('\n', body);
    if (eol == std::string::npos) return std::nullopt;
    body = eol + 1;
    const std::size_t close = s.find(fence, body);
    if (close == std::string::npos) return std::nullopt;
    std::string content = s.substr(body, close - body);
    while (!content.empty() && (content.back() == '\n' || content.back() == '\r')) content.pop_back();
    return content;
}

}  // namespace

std::optional<std::string> extract_json(const std::string& response) {
    if (auto block = fenced_block(response)) return block;

    const std::size_t open = response.find('{');
    if (open == std::string::npos) return std::nullopt;

    StringTracker str;
    int depth = 0;
    for (std::size_t i = open; i < response.size(); ++i) {
        const char c = response[i];
        const bool was_in_string = str.in_string;
        str.feed(c);
        if (was_in_string || str.in_string) continue;
        if (c == '{') {
            ++depth;
        } else if (c == '}') {
            --depth;
            if (depth == 0) return response.substr(open, i - open + 1);
        }
    }
    // opening brace never balanced: hand the rest to the parser
    return response.substr(open);
}

ParseOutcome strict_parse(const std::string& text) {
    ParseOutcome out;
    try {
        out.doc = json::parse(text);
        out.ok = true;
    } catch (const json::parse_error& e) {
        out.ok = false;
        out.error = e.what();
        out.error_byte = e.byte;
    }
    return out;
}

std::string repair_text(const std::string& text, std::vector<std::string>* log) {
    if (strict_parse(text).ok) return text;

    // 1. strip trailing commas: a ',' whose next non-whitespace is '}', ']' or EOF
    std::string pass1;
    pass1.reserve(text.size());
    {
        StringTracker str;
        for (std::size_t i = 0; i < text.size(); ++i) {
            const char c = text[i];
            const bool was_in_string = str.in_string;
            str.feed(c);
            if (!was_in_string && !str.in_string && c == ',') {
                std::size_t k = i + 1;
                while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
                if (k >= text.size() || text[k] == '}' || text[k] == ']') {
                    if (log) log->push_back("trailing-comma");
                    continue;
                }
            }
            pass1.push_back(c);
        }
    }

    // 2. balance: append closers for still-open braces/brackets
    std::string pass2 = pass1;
    {
        StringTracker str;
        std::vector<char> stack;
        for (char c : pass1) {
            const bool was_in_string = str.in_string;
            str.feed(c);
            if (was_in_string || str.in_string) continue;
            if (c == '{' || c == '[') {
                stack.push_back(c);
            } else if (c == '}' || c == ']') {
                if (!stack.empty()) stack.pop_back();
            }
        }
        if (str.in_string) pass2.push_back('"');  // unterminated string, close it first
        for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
            pass2.push_back(*it == '{' ? '}' : ']');
            if (log) log->push_back(*it == '{' ? "close-brace" : "close-bracket");
        }
    }

    // 3. strip raw control characters inside strings (JSON requires \u escapes)
    std::string pass3;
    pass3.reserve(pass2.size());
    {
        StringTracker str;
        for (char c : pass2) {
            const bool was_in_string = str.in_string;
            str.feed(c);
            if (was_in_string && str.in_string && static_cast<unsigned char>(c) < 0x20) {
                if (log) log->push_back("control-char");
                continue;
            }
            pass3.push_back(c);
        }
    }
    return pass3;
}

RepairOutcome repair_parse(const std::string& text) {
    RepairOutcome out;
    out.original_text = text;
    out.repaired_text = repair_text(text, &out.log);
    ParseOutcome parsed = strict_parse(out.repaired_text);
    out.ok = parsed.ok;
    if (parsed.ok) out.doc = std::move(parsed.doc);
    return out;
}

KeyMissingResult key_missing(const json& target, const std::vector<std::string>& truth_keys) {
    KeyMissingResult out;
    const std::vector<std::string> target_keys = flatten_keys(target);
    const std::set<std::string> target_set(target_keys.begin(), target_keys.end());
    const std::set<std::string> truth_set(truth_keys.begin(), truth_keys.end());
    for (const auto& k : truth_keys) {
        if (!target_set.count(k)) out.missing.push_back(k);
    }
    for (const auto& k : target_keys) {
        if (!truth_set.count(k)) out.extra.push_back(k);
    }
    out.rate = truth_keys.empty() ? 0.0
                                  : static_cast<double>(out.missing.size()) /
                                        static_cast<double>(truth_keys.size());
    return out;
}

std::vector<std::string> bleu_tokenize(const std::string& text) {
    static const std::string structural = "{}[],:\"";
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back(current);
            current.clear();
        }
    };
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
        } else if (structural.find(c) != std::string::npos) {
            flush();
            tokens.emplace_back(1, c);
        } else {
            current.push_back(c);
        }
    }
    flush();
    return tokens;
}

double bleu4(const std::string& candidate, const std::string& reference) {
    constexpr double kEps = 1e-9;
    const std::vector<std::string> cand = bleu_tokenize(candidate);
    const std::vector<std::string> ref = bleu_tokenize(reference);
    if (cand.empty()) return 0.0;

    double log_sum = 0.0;
    for (int n = 1; n <= 4; ++n) {
        std::unordered_map<std::string, int> ref_counts;
        for (std::size_t i = 0; n <= static_cast<int>(ref.size()) && i + n <= ref.size(); ++i) {
            std::string gram;
            for (int k = 0; k < n; ++k) gram += ref[i + k] + '\x1f';
            ++ref_counts[gram];
        }
        std::unordered_map<std::string, int> cand_counts;
        std::size_t total = 0;
        for (std::size_t i = 0; n <= static_cast<int>(cand.size()) && i + n <= cand.size(); ++i) {
            std::string gram;
            for (int k = 0; k < n; ++k) gram += cand[i + k] + '\x1f';
            ++cand_counts[gram];
            ++total;
        }
        std::size_t matched = 0;
        for (const auto& [gram, count] : cand_counts) {
            auto it = ref_counts.find(gram);
            if (it != ref_counts.end()) matched += std::min(count, it->second);
        }
        const double p = total > 0 ? static_cast<double>(matched) / static_cast<double>(total) : 0.0;
        log_sum += std::log(p + kEps);
    }

    const double c = static_cast<double>(cand.size());
    const double r = static_cast<double>(ref.size());
    const double bp = c >= r ? 1.0 : std::exp(1.0 - r / c);
    const double score = bp * std::exp(log_sum / 4.0);
    return std::clamp(score, 0.0, 1.0);
}

IntegrityReport assess_integrity(const std::string& raw_response,
                                 const std::vector<std::string>& truth_keys,
                                 const std::string& reference_text) {
    IntegrityReport rep;
    const std::optional<std::string> extracted = extract_json(raw_response);
    if (!extracted) {
        rep.parse_error = "no JSON object found in response";
        return rep;  // counts toward the syntax-error rate
    }

    ParseOutcome strict = strict_parse(*extracted);
    rep.strict_parse_ok = strict.ok;
    if (strict.ok) {
        rep.doc = std::move(strict.doc);
    } else {
        rep.parse_error = strict.error;
        RepairOutcome repaired = repair_parse(*extracted);
        if (repaired.ok) {
            rep.repaired_parse_ok = true;
            rep.repair_log = std::move(repaired.log);
            rep.doc = std::move(repaired.doc);
        }
    }

    if (rep.doc) {
        KeyMissingResult km = key_missing(*rep.doc, truth_keys);
        rep.missing_keys = std::move(km.missing);
        rep.extra_keys = std::move(km.extra);
        rep.key_missing_rate = km.rate;
    }
    rep.bleu4 = bleu4(*extracted, reference_text);
    return rep;
}

}  // namespace plotbench
