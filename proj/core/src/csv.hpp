#ifndef BBTEA_SRC_CSV_HPP
#define BBTEA_SRC_CSV_HPP

#include "text.hpp"

#include <fmt/format.h>

#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bbtea::detail {

/// Header-addressed, comma-separated table without quoting.
class CsvTable {
public:
    CsvTable(std::istream& in, std::string name) : name_(std::move(name)) {
        std::string line;
        bool have_header = false;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (line_no == 1 && line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) {
                line.erase(0, 3);
            }
            if (trim(line).empty()) continue;
            std::vector<std::string> cells;
            for (auto c : split(line, ',')) cells.emplace_back(trim(c));
            if (!have_header) {
                header_ = std::move(cells);
                have_header = true;
                continue;
            }
            if (cells.size() != header_.size()) {
                throw ValidationError(fmt::format("{} line {}: expected {} columns, got {}", name_,
                                                  line_no, header_.size(), cells.size()));
            }
            rows_.push_back(std::move(cells));
            line_numbers_.push_back(line_no);
        }
        if (!have_header) throw ValidationError(name_ + ": missing header row");
    }

    const std::vector<std::string>& header() const { return header_; }
    std::size_t rows() const { return rows_.size(); }

    std::optional<std::size_t> find(std::string_view column) const {
        for (std::size_t i = 0; i < header_.size(); ++i) {
            if (header_[i] == column) return i;
        }
        return std::nullopt;
    }

    std::size_t require(std::string_view column) const {
        if (auto i = find(column)) return *i;
        throw ValidationError(fmt::format("{}: missing required column '{}'", name_, column));
    }

    const std::string& cell(std::size_t row, std::size_t col) const { return rows_[row][col]; }

    double number(std::size_t row, std::size_t col) const {
        double v = 0.0;
        if (!try_parse_double(rows_[row][col], v)) {
            throw ValidationError(where(row, col) + ": expected a number, got '" +
                                  rows_[row][col] + "'");
        }
        return v;
    }

    template <typename Int>
    Int integer(std::size_t row, std::size_t col) const {
        Int v{};
        if (!try_parse_int(rows_[row][col], v)) {
            throw ValidationError(where(row, col) + ": expected an integer, got '" +
                                  rows_[row][col] + "'");
        }
        return v;
    }

    std::string where(std::size_t row, std::size_t col) const {
        return fmt::format("{} line {}, column {}", name_, line_numbers_[row], header_[col]);
    }
    std::string where(std::size_t row) const {
        return fmt::format("{} line {}", name_, line_numbers_[row]);
    }

private:
    std::string name_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::size_t> line_numbers_;
};

}  // namespace bbtea::detail

#endif  // BBTEA_SRC_CSV_HPP
