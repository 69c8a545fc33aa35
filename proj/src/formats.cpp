#include "qtrng/formats.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qtrng {

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string::size_type pos = 0;
    for (;;) {
        const auto next = text.find(sep, pos);
        parts.push_back(text.substr(pos, next - pos));
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return parts;
}

double parse_number(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) + ": bad number '" + text + "'");
    }
}

// `re` or `re:im`.
Complex parse_complex_colon(const std::string& text, const char* what) {
    const auto parts = split(text, ':');
    if (parts.size() == 1) return Complex(parse_number(parts[0], what));
    if (parts.size() == 2)
        return Complex(parse_number(parts[0], what), parse_number(parts[1], what));
    throw std::invalid_argument(std::string(what) + ": bad complex entry '" + text + "'");
}

}  // namespace

StreamFormat parse_format(const std::string& name) {
    if (name == "ascii") return StreamFormat::Ascii;
    if (name == "raw") return StreamFormat::Raw;
    if (name == "json") return StreamFormat::Json;
    throw std::invalid_argument("unknown stream format '" + name + "'");
}

std::string format_ascii(const TritStream& s) {
    std::string out;
    out.reserve(s.size() + s.size() / 64 + 1);
    for (std::size_t i = 0; i < s.size(); ++i) {
        out.push_back(static_cast<char>('0' + s.trits[i]));
        if ((i + 1) % 64 == 0) out.push_back('\n');
    }
    if (s.size() % 64 != 0) out.push_back('\n');
    return out;
}

TritStream parse_ascii(const std::string& text) {
    TritStream s;
    for (const char ch : text) {
        if (ch == '\n' || ch == '\r') continue;
        if (ch < '0' || ch > '2')
            throw std::invalid_argument(std::string("parse_ascii: unexpected character '") +
                                        ch + "'");
        s.trits.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return s;
}

std::string format_raw(const TritStream& s) {
    return std::string(s.trits.begin(), s.trits.end());
}

TritStream parse_raw(const std::string& bytes) {
    TritStream s;
    for (const char b : bytes) {
        const auto v = static_cast<std::uint8_t>(b);
        if (v > 2) throw std::invalid_argument("parse_raw: byte out of range");
        s.trits.push_back(v);
    }
    return s;
}

nlohmann::json report_to_json(const SessionReport& report, const StreamStats* stats) {
    nlohmann::json j{{"emitted", report.emitted},
                     {"checks", report.checks},
                     {"check_zero_count", report.check_zero_count},
                     {"required_checks", report.required_checks},
                     {"Y", report.fidelity_estimate},
                     {"verdict", std::string(verdict_name(report.verdict))},
                     {"epsilon", report.config.epsilon},
                     {"delta", report.config.delta},
                     {"check_rate", report.config.check_rate},
                     {"threshold", report.config.fidelity_threshold},
                     {"seed", report.seed}};
    if (report.public_seed)
        j["public_seed"] = *report.public_seed;
    else
        j["public_seed"] = nullptr;
    if (stats != nullptr) {
        j["stats"] = nlohmann::json{{"n", stats->n},
                                    {"counts", stats->counts},
                                    {"frequencies", stats->frequencies},
                                    {"entropy_bits", stats->entropy_bits},
                                    {"chi2", stats->chi2},
                                    {"uniformity_pass", stats->uniformity_pass}};
    }
    return j;
}

nlohmann::json session_to_json(const SessionResult& result, const StreamStats* stats) {
    nlohmann::json trits = nlohmann::json::array();
    for (const std::uint8_t t : result.output.trits) trits.push_back(static_cast<int>(t));
    return nlohmann::json{{"trits", std::move(trits)},
                          {"report", report_to_json(result.report, stats)}};
}

QutritState parse_state_spec(const std::string& spec) {
    if (spec == "plus") return make_state(1, 0, 0);
    if (spec == "zero") return make_state(0, 1, 0);
    if (spec == "minus") return make_state(0, 0, 1);
    if (spec.rfind("unbiased", 0) == 0 && spec.size() == 9 && spec[8] >= '0' && spec[8] <= '3')
        return unbiased_state(spec[8] - '0');

    const auto parts = split(spec, ',');
    if (parts.size() == 3) {
        return make_state(parse_number(parts[0], "state spec"),
                          parse_number(parts[1], "state spec"),
                          parse_number(parts[2], "state spec"));
    }
    if (parts.size() == 6) {
        return make_state(Complex(parse_number(parts[0], "state spec"),
                                  parse_number(parts[1], "state spec")),
                          Complex(parse_number(parts[2], "state spec"),
                                  parse_number(parts[3], "state spec")),
                          Complex(parse_number(parts[4], "state spec"),
                                  parse_number(parts[5], "state spec")));
    }
    throw std::invalid_argument(
        "state spec '" + spec +
        "': expected a named state, 3 numbers (real amplitudes) or 6 numbers (re,im pairs)");
}

SourceModel parse_source_spec(const std::string& spec) {
    if (spec == "ideal") return SourceModel::ideal();
    if (spec.rfind("state:", 0) == 0)
        return SourceModel::fixed(parse_state_spec(spec.substr(6)));
    if (spec.rfind("ensemble:", 0) == 0) {
        const std::string path = spec.substr(9);
        std::ifstream in(path);
        if (!in) throw std::ios_base::failure("cannot read ensemble file '" + path + "'");
        return parse_ensemble(in);
    }
    throw std::invalid_argument("source spec '" + spec +
                                "': expected ideal, state:<amplitudes> or ensemble:<file>");
}

SourceModel parse_ensemble(std::istream& in) {
    std::vector<std::pair<double, QutritState>> components;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string w, a, b, c;
        if (!(ls >> w)) continue;       // blank line
        if (w[0] == '#') continue;      // comment
        if (!(ls >> a >> b >> c))
            throw std::invalid_argument("ensemble line " + std::to_string(lineno) +
                                        ": expected 'weight a b c'");
        std::string extra;
        if (ls >> extra)
            throw std::invalid_argument("ensemble line " + std::to_string(lineno) +
                                        ": trailing content '" + extra + "'");
        components.emplace_back(parse_number(w, "ensemble weight"),
                                make_state(parse_complex_colon(a, "ensemble amplitude"),
                                           parse_complex_colon(b, "ensemble amplitude"),
                                           parse_complex_colon(c, "ensemble amplitude")));
    }
    if (components.empty()) throw std::invalid_argument("ensemble file has no components");
    return SourceModel::ensemble(std::move(components));
}

std::uint64_t parse_seed(const std::string& text) {
    std::uint64_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    int base = 10;
    if (text.size() > 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
        first += 2;
        base = 16;
    }
    const auto [ptr, ec] = std::from_chars(first, last, value, base);
    if (ec != std::errc() || ptr != last)
        throw std::invalid_argument("seed '" + text + "': expected decimal or 0x-hex");
    return value;
}

}  // namespace qtrng
