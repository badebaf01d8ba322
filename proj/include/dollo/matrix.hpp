// Binary species/character matrices and their CSV exchange format.
//
// The matrix is the primary input artifact: rows are species, columns are
// characters, and cell (s, c) == 1 means species s possesses character c.
// The CSV layout is fixed: the first row holds an empty cell followed by the
// character labels; every following row holds a species label followed by
// 0/1 cells.  No quoting, LF or CRLF line endings, bit-exact round-trips.

#ifndef DOLLO_MATRIX_HPP
#define DOLLO_MATRIX_HPP

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dollo {

using Bitset = boost::dynamic_bitset<>;

// Raised on malformed CSV input; line/column are 1-based positions of the
// offending cell so callers can point at the exact spot.
struct ParseError : std::runtime_error {
    std::size_t line;
    std::size_t column;

    ParseError(std::string msg, std::size_t line_, std::size_t column_)
        : std::runtime_error(std::move(msg) + " (line " + std::to_string(line_)
                             + ", column " + std::to_string(column_) + ")"),
          line(line_),
          column(column_) {}
};

struct BinaryMatrix {
    std::vector<std::string> species;     // row labels, input order
    std::vector<std::string> characters;  // column labels, input order
    std::vector<Bitset> rows;             // rows[s][c] == species s has character c

    std::size_t n() const { return species.size(); }
    std::size_t m() const { return characters.size(); }

    bool cell(std::size_t s, std::size_t c) const { return rows[s].test(c); }
};

namespace detail {

// Splits one CSV record into cells.  The format forbids quoting, so a plain
// scan over commas is the whole grammar.
inline std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.emplace_back(line.substr(start));
            return cells;
        }
        cells.emplace_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

}  // namespace detail

// Parses the fixed CSV layout described above.  Structural defects (ragged
// rows, missing header, duplicate labels, cells other than 0/1) raise
// ParseError with the cell position.
inline BinaryMatrix parse_matrix_csv(std::string_view text) {
    // Normalize line endings and split; a trailing newline does not create a
    // phantom final row.
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = (nl == std::string_view::npos)
                                    ? text.substr(pos)
                                    : text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();

    if (lines.empty()) throw ParseError("empty input, expected a header row", 1, 1);

    BinaryMatrix m;
    std::vector<std::string> header = detail::split_csv_line(lines[0]);
    if (!header[0].empty())
        throw ParseError("header must start with an empty cell", 1, 1);
    for (std::size_t j = 1; j < header.size(); ++j) {
        if (header[j].empty())
            throw ParseError("empty character label", 1, j + 1);
        m.characters.push_back(header[j]);
    }
    for (std::size_t j = 0; j < m.characters.size(); ++j)
        for (std::size_t k = j + 1; k < m.characters.size(); ++k)
            if (m.characters[j] == m.characters[k])
                throw ParseError("duplicate character label '" + m.characters[j] + "'",
                                 1, k + 2);

    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string> cells = detail::split_csv_line(lines[i]);
        if (cells.size() != m.m() + 1)
            throw ParseError("expected " + std::to_string(m.m() + 1) + " cells, found "
                                 + std::to_string(cells.size()),
                             i + 1, cells.size());
        if (cells[0].empty())
            throw ParseError("empty species label", i + 1, 1);
        m.species.push_back(cells[0]);
        Bitset row(m.m());
        for (std::size_t j = 1; j < cells.size(); ++j) {
            if (cells[j] == "1")
                row.set(j - 1);
            else if (cells[j] != "0")
                throw ParseError("cell must be 0 or 1, found '" + cells[j] + "'",
                                 i + 1, j + 1);
        }
        m.rows.push_back(std::move(row));
    }
    for (std::size_t i = 0; i < m.species.size(); ++i)
        for (std::size_t k = i + 1; k < m.species.size(); ++k)
            if (m.species[i] == m.species[k])
                throw ParseError("duplicate species label '" + m.species[i] + "'",
                                 k + 2, 1);
    return m;
}

inline std::string to_csv(const BinaryMatrix& m) {
    std::string out;
    for (const std::string& c : m.characters) {
        out += ',';
        out += c;
    }
    out += '\n';
    for (std::size_t i = 0; i < m.n(); ++i) {
        out += m.species[i];
        for (std::size_t j = 0; j < m.m(); ++j) {
            out += ',';
            out += m.rows[i].test(j) ? '1' : '0';
        }
        out += '\n';
    }
    return out;
}

// Convenience constructor used throughout the tests: builds a matrix from row
// bit-strings ("0110"), auto-labeling species s1..sN and characters c1..cM
// unless labels are supplied.
inline BinaryMatrix make_matrix(const std::vector<std::string>& bit_rows,
                                std::vector<std::string> species_labels = {},
                                std::vector<std::string> character_labels = {}) {
    BinaryMatrix m;
    std::size_t cols = bit_rows.empty() ? 0 : bit_rows.front().size();
    for (std::size_t j = 0; j < cols; ++j)
        m.characters.push_back(character_labels.empty() ? "c" + std::to_string(j + 1)
                                                        : character_labels[j]);
    for (std::size_t i = 0; i < bit_rows.size(); ++i) {
        if (bit_rows[i].size() != cols)
            throw std::invalid_argument("ragged bit rows");
        m.species.push_back(species_labels.empty() ? "s" + std::to_string(i + 1)
                                                   : species_labels[i]);
        Bitset row(cols);
        for (std::size_t j = 0; j < cols; ++j) {
            if (bit_rows[i][j] == '1')
                row.set(j);
            else if (bit_rows[i][j] != '0')
                throw std::invalid_argument("bit rows must contain only 0/1");
        }
        m.rows.push_back(std::move(row));
    }
    return m;
}

}  // namespace dollo

#endif  // DOLLO_MATRIX_HPP
