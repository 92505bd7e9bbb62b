#include "bachvol/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <sstream>

namespace bachvol {

std::string format_number(double value, int significant_digits) {
    std::array<char, 64> buf{};
    const auto [end, ec] =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, significant_digits);
    if (ec != std::errc{}) return "nan";
    return std::string(buf.data(), end);
}

CsvError::CsvError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

const char* to_string(QuoteKind kind) noexcept {
    switch (kind) {
        case QuoteKind::NormalVol: return "normal_vol";
        case QuoteKind::BlackVol: return "black_vol";
        case QuoteKind::PriceCall: return "price_call";
        case QuoteKind::PricePut: return "price_put";
    }
    return "?";
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_double(std::string_view field, int line, const char* what) {
    field = trim(field);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
        throw CsvError(line, std::string("cannot parse ") + what + " '" + std::string(field) + "'");
    }
    if (!std::isfinite(v)) throw CsvError(line, std::string(what) + " must be finite");
    return v;
}

QuoteKind parse_kind(std::string_view field, int line) {
    field = trim(field);
    for (QuoteKind k : {QuoteKind::NormalVol, QuoteKind::BlackVol, QuoteKind::PriceCall, QuoteKind::PricePut}) {
        if (field == to_string(k)) return k;
    }
    throw CsvError(line, "unknown kind '" + std::string(field) +
                             "' (expected normal_vol, black_vol, price_call or price_put)");
}

}  // namespace

std::vector<Quote> parse_quotes(std::istream& in) {
    std::string raw;
    int line = 0;
    bool header_seen = false;
    std::vector<Quote> quotes;
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view text = trim(raw);
        if (text.empty()) continue;
        if (!header_seen) {
            if (text != kQuotesHeader) {
                throw CsvError(line, "expected header '" + std::string(kQuotesHeader) + "', got '" +
                                         std::string(text) + "'");
            }
            header_seen = true;
            continue;
        }
        std::vector<std::string_view> fields;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = text.find(',', start);
            fields.push_back(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (fields.size() != 3) {
            throw CsvError(line, "expected 3 fields, got " + std::to_string(fields.size()));
        }
        quotes.push_back(Quote{parse_double(fields[0], line, "strike"), parse_double(fields[1], line, "value"),
                               parse_kind(fields[2], line), line});
    }
    if (!header_seen) throw CsvError(line == 0 ? 1 : line, "no rows");
    if (quotes.empty()) throw CsvError(line, "no rows");
    return quotes;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out += ',';
        out += fields[i];
    }
    return out;
}

}  // namespace bachvol
