#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace oim {

// Fixed numeric formatting for all emitted tables: 9 significant digits.
std::string format_g9(double x);

// CSV with a leading "# config: <json>" line and a header row. Cells are
// pre-formatted by the caller.
void write_csv(std::ostream& os, const std::string& config_json,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Throws std::ios_base::failure on any write error.
void write_csv_file(const std::string& path, const std::string& config_json,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows);

void write_text_file(const std::string& path, const std::string& content);

} // namespace oim
