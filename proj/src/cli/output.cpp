#include "fracmc/cli/output.hpp"

#include <fmt/format.h>

namespace fracmc::cli {
namespace {

void write_line(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            os << ',';
        }
        os << cells[i];
    }
    os << '\n';
}

}  // namespace

std::string format_number(double value) {
    return fmt::format("{}", value);
}

void write_solve_csv(std::ostream& os, const std::vector<SolveRow>& rows) {
    os << kSolveCsvHeader << '\n';
    for (const SolveRow& row : rows) {
        write_line(os, {std::to_string(row.n), format_number(row.x), format_number(row.y),
                        format_number(row.std_error),
                        row.exact ? format_number(*row.exact) : std::string(),
                        row.abs_error ? format_number(*row.abs_error) : std::string()});
    }
}

void write_solve_json(std::ostream& os, const std::vector<SolveRow>& rows,
                      const nlohmann::ordered_json& meta) {
    nlohmann::ordered_json doc;
    doc["meta"] = meta;
    auto& out_rows = doc["rows"] = nlohmann::ordered_json::array();
    for (const SolveRow& row : rows) {
        nlohmann::ordered_json r;
        r["n"] = row.n;
        r["x"] = row.x;
        r["y_mc"] = row.y;
        r["stderr"] = row.std_error;
        r["y_exact"] = row.exact ? nlohmann::ordered_json(*row.exact) : nullptr;
        r["abs_err"] = row.abs_error ? nlohmann::ordered_json(*row.abs_error) : nullptr;
        out_rows.push_back(std::move(r));
    }
    os << doc.dump(2) << '\n';
}

void write_csv_table(std::ostream& os, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows) {
    write_line(os, header);
    for (const auto& row : rows) {
        write_line(os, row);
    }
}

}  // namespace fracmc::cli
