#pragma once

// Wire and file formats: trit stream encodings (ascii / raw / json), the
// CLI state-spec grammar, ensemble files, seed literals and the JSON
// session report.

#include <iosfwd>
#include <string>

#include "qtrng/generator.hpp"
#include "qtrng/sampler.hpp"
#include "qtrng/stats.hpp"

#include <json.hpp>

namespace qtrng {

enum class StreamFormat { Ascii, Raw, Json };

StreamFormat parse_format(const std::string& name);  // throws on unknown name

// Characters '0'/'1'/'2', a newline after every 64 symbols and a trailing
// newline; parse ignores line breaks, so ascii -> parse -> ascii is identity.
std::string format_ascii(const TritStream& s);
TritStream parse_ascii(const std::string& text);  // throws on foreign characters

// One byte per trit, values 0x00/0x01/0x02.
std::string format_raw(const TritStream& s);
TritStream parse_raw(const std::string& bytes);

// Fixed field names; extra diagnostics live under their own keys.
nlohmann::json report_to_json(const SessionReport& report, const StreamStats* stats);

// One document wrapping the trits array and the report.
nlohmann::json session_to_json(const SessionResult& result, const StreamStats* stats);

// `a_re[,a_im],b_re[,b_im],c_re[,c_im]`: exactly 3 numbers (real amplitudes)
// or 6 numbers (re,im interleaved). Shortcuts: unbiased0..unbiased3, plus,
// zero, minus.
QutritState parse_state_spec(const std::string& spec);

// `ideal` | `state:<amplitudes>` | `ensemble:<path>`.
SourceModel parse_source_spec(const std::string& spec);

// One component per line: `weight a b c`, complex entries as `re[:im]`;
// blank lines and lines starting with '#' are skipped.
SourceModel parse_ensemble(std::istream& in);

// Decimal or 0x-prefixed hex, 64-bit unsigned.
std::uint64_t parse_seed(const std::string& text);

}  // namespace qtrng
