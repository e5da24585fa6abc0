#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fracmc::cli {

/// One output line of `solve`: n,x,y_mc,stderr,y_exact,abs_err.
struct SolveRow {
    std::size_t n = 0;
    double x = 0.0;
    double y = 0.0;
    double std_error = 0.0;
    std::optional<double> exact;
    std::optional<double> abs_error;
};

inline constexpr const char* kSolveCsvHeader = "n,x,y_mc,stderr,y_exact,abs_err";

/// Shortest decimal string that round-trips to the same double; '.' decimal
/// point regardless of locale.
std::string format_number(double value);

void write_solve_csv(std::ostream& os, const std::vector<SolveRow>& rows);
void write_solve_json(std::ostream& os, const std::vector<SolveRow>& rows,
                      const nlohmann::ordered_json& meta);

/// Generic CSV table: header line then rows, '\n' terminated.
void write_csv_table(std::ostream& os, const std::vector<std::string>& header,
                     const std::vector<std::vector<std::string>>& rows);

}  // namespace fracmc::cli
