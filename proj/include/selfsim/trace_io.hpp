#pragma once

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "series.hpp"

namespace selfsim {

// Shortest decimal string that parses back to the same double.
inline std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

namespace detail {

inline double parse_double(std::string_view tok, std::size_t line_no) {
    double v{};
    const char* last = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(tok.data(), last, v);
    if (ec != std::errc{} || ptr != last)
        throw std::runtime_error("line " + std::to_string(line_no) + ": non-numeric token '" +
                                 std::string(tok) + "'");
    return v;
}

}  // namespace detail

// Reads the toolkit's interchange format: '#' comment lines (an optional
// '# bin_width=W' header sets the bin width, default 1), then either one
// count per line or "time count" pairs whose time column must be strictly
// increasing.  Commas and tabs count as column separators.
inline TimeSeries read_counts(std::istream& in) {
    TimeSeries s;
    std::string line;
    std::size_t line_no = 0;
    bool have_prev_time = false;
    double prev_time = 0.0;

    while (std::getline(in, line)) {
        ++line_no;
        for (char& ch : line)
            if (ch == ',' || ch == '\t' || ch == '\r') ch = ' ';
        const std::size_t first = line.find_first_not_of(' ');
        if (first == std::string::npos) continue;

        if (line[first] == '#') {
            std::string_view rest = std::string_view(line).substr(first + 1);
            while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
            if (rest.starts_with("bin_width")) {
                rest.remove_prefix(std::string_view("bin_width").size());
                while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
                if (!rest.empty() && rest.front() == '=') {
                    rest.remove_prefix(1);
                    while (!rest.empty() && rest.front() == ' ') rest.remove_prefix(1);
                    const std::size_t end = rest.find(' ');
                    const double w = detail::parse_double(
                        end == std::string_view::npos ? rest : rest.substr(0, end), line_no);
                    if (!(w > 0.0))
                        throw std::runtime_error("line " + std::to_string(line_no) +
                                                 ": bin_width must be > 0");
                    s.bin_width = w;
                }
            }
            continue;
        }

        std::string_view tok[3];
        int n_tok = 0;
        std::size_t pos = first;
        while (pos < line.size()) {
            const std::size_t end = line.find(' ', pos);
            const std::size_t stop = (end == std::string::npos) ? line.size() : end;
            if (stop > pos) {
                if (n_tok == 3)
                    throw std::runtime_error("line " + std::to_string(line_no) +
                                             ": expected one or two columns");
                tok[n_tok++] = std::string_view(line).substr(pos, stop - pos);
            }
            pos = stop + 1;
        }
        if (n_tok == 3)
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": expected one or two columns");

        double count;
        if (n_tok == 1) {
            count = detail::parse_double(tok[0], line_no);
        } else {
            const double t = detail::parse_double(tok[0], line_no);
            if (have_prev_time && !(t > prev_time))
                throw std::runtime_error("line " + std::to_string(line_no) +
                                         ": timestamps must be strictly increasing");
            prev_time = t;
            have_prev_time = true;
            count = detail::parse_double(tok[1], line_no);
        }
        if (count < 0.0)
            throw std::runtime_error("line " + std::to_string(line_no) + ": negative count " +
                                     format_double(count));
        if (!std::isfinite(count))
            throw std::runtime_error("line " + std::to_string(line_no) + ": count is not finite");
        s.counts.push_back(count);
    }
    if (s.counts.empty()) throw std::runtime_error("empty input: no data lines");
    return s;
}

inline TimeSeries read_counts(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open trace file: " + path);
    return read_counts(f);
}

// Writes the bin-width header and one count per line at full precision, so
// read_counts(write_counts(s)) reproduces s exactly.
inline void write_counts(const TimeSeries& s, std::ostream& out) {
    if (s.empty()) throw std::invalid_argument("write_counts: empty series");
    out << "# bin_width=" << format_double(s.bin_width) << '\n';
    for (double c : s.counts) out << format_double(c) << '\n';
    if (!out) throw std::runtime_error("write_counts: output stream failed");
}

inline void write_counts(const TimeSeries& s, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    write_counts(s, f);
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + path);
}

}  // namespace selfsim
