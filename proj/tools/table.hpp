#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace cli {

enum class Format { Tsv, Json, Pretty };

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    // columns rendered as JSON numbers rather than strings
    std::vector<bool> numeric;

    void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }

    void write(std::ostream& out, Format f) const {
        switch (f) {
        case Format::Tsv:
            write_line(out, header, '\t');
            for (const auto& r : rows) write_line(out, r, '\t');
            break;
        case Format::Json: {
            auto arr = nlohmann::ordered_json::array();
            for (const auto& r : rows) {
                nlohmann::ordered_json o;
                for (std::size_t i = 0; i < header.size(); ++i) {
                    if (i < numeric.size() && numeric[i] && r[i] != "-") o[header[i]] = nlohmann::ordered_json::parse(r[i]);
                    else o[header[i]] = r[i];
                }
                arr.push_back(std::move(o));
            }
            out << arr.dump(2) << '\n';
            break;
        }
        case Format::Pretty: {
            std::vector<std::size_t> width(header.size());
            for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
            for (const auto& r : rows)
                for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
            auto line = [&](const std::vector<std::string>& r) {
                for (std::size_t i = 0; i < r.size(); ++i) {
                    if (i) out << "  ";
                    out << r[i];
                    if (i + 1 < r.size()) out << std::string(width[i] - r[i].size(), ' ');
                }
                out << '\n';
            };
            line(header);
            std::size_t total = 0;
            for (auto w : width) total += w + 2;
            out << std::string(total > 2 ? total - 2 : 0, '-') << '\n';
            for (const auto& r : rows) line(r);
            break;
        }
        }
    }

private:
    static void write_line(std::ostream& out, const std::vector<std::string>& r, char sep) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i) out << sep;
            out << r[i];
        }
        out << '\n';
    }
};

}  // namespace cli
