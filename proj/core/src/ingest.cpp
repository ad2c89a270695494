#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>

#include "fxdiag/pipeline.hpp"

namespace fxdiag {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void parse_fail(const std::string& source, std::size_t line, std::size_t column,
                             const std::string& what) {
    std::string msg = source + ": line " + std::to_string(line);
    if (column > 0) msg += ", column " + std::to_string(column);
    fail(ErrorKind::InvalidInput, msg + ": " + what);
}

}  // namespace

Series parse_series(std::istream& in, const CsvConfig& cfg, const std::string& source) {
    std::vector<Observation> points;
    std::string raw;
    std::size_t line_no = 0;
    bool first_content = true;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line(raw);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (trim(line).empty()) continue;

        const auto sep = line.find(cfg.delimiter);
        const std::string_view date_field = trim(line.substr(0, sep));
        const bool is_first = first_content;
        first_content = false;

        Date date;
        const bool date_ok = parse_date(date_field, date);
        if (is_first && (cfg.header.value_or(!date_ok))) continue;  // header line

        if (sep == std::string_view::npos)
            parse_fail(source, line_no, 0, "expected two fields `date" + std::string(1, cfg.delimiter) + "value`");
        if (!date_ok)
            parse_fail(source, line_no, 1, "invalid date '" + std::string(date_field) + "' (expected YYYY-MM-DD)");

        std::string_view rest = line.substr(sep + 1);
        if (rest.find(cfg.delimiter) != std::string_view::npos)
            parse_fail(source, line_no, 0, "more than two fields");
        const std::size_t value_column = sep + 2;
        const std::string_view value_field = trim(rest);
        double value = 0.0;
        const auto [ptr, ec] =
            std::from_chars(value_field.data(), value_field.data() + value_field.size(), value);
        if (ec != std::errc{} || ptr != value_field.data() + value_field.size())
            parse_fail(source, line_no, value_column, "invalid number '" + std::string(value_field) + "'");
        if (!std::isfinite(value)) parse_fail(source, line_no, value_column, "non-finite value");
        if (value <= 0.0)
            parse_fail(source, line_no, value_column,
                       "nonpositive value " + std::string(value_field) + " (logarithm undefined)");
        if (!points.empty()) {
            if (points.back().date == date)
                parse_fail(source, line_no, 1, "duplicate date " + format_date(date));
            if (date < points.back().date)
                parse_fail(source, line_no, 1,
                           "unsorted dates: " + format_date(date) + " follows " +
                               format_date(points.back().date));
        }
        points.push_back({date, value});
    }
    if (points.empty()) fail(ErrorKind::InvalidInput, source + ": empty file (no observations)");
    if (points.size() < 2)
        fail(ErrorKind::InvalidInput, source + ": need at least 2 observations");
    return Series(std::move(points));
}

Series load_series(const std::filesystem::path& path, const CsvConfig& cfg) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open " + path.string());
    return parse_series(in, cfg, path.string());
}

}  // namespace fxdiag
