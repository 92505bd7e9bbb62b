#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bachvol {

/// Shortest-general formatting with the given number of significant digits
/// ("C" locale, '.' decimal point). 17 digits round-trip any double.
[[nodiscard]] std::string format_number(double value, int significant_digits = 17);

/// Malformed CSV input; carries the 1-based line number.
class CsvError : public std::runtime_error {
public:
    CsvError(int line, const std::string& message);
    [[nodiscard]] int line() const noexcept { return line_; }

private:
    int line_;
};

enum class QuoteKind { NormalVol, BlackVol, PriceCall, PricePut };

[[nodiscard]] const char* to_string(QuoteKind kind) noexcept;

/// One row of a "strike,value,kind" quotes file.
struct Quote {
    double strike;
    double value;
    QuoteKind kind;
    int line;
};

enum class VolModel { Normal, Black };

/// A (strike, volatility) point tagged with the model it is quoted in.
struct VolPoint {
    double strike;
    double vol_value;
    VolModel model_kind;
};

inline constexpr std::string_view kQuotesHeader = "strike,value,kind";

/// Parses a quotes file. The header row is mandatory; blank lines are skipped.
/// Throws CsvError naming the offending line, including "no rows" for a file
/// without data.
[[nodiscard]] std::vector<Quote> parse_quotes(std::istream& in);

/// Joins already-formatted fields with ','.
[[nodiscard]] std::string csv_row(const std::vector<std::string>& fields);

}  // namespace bachvol
