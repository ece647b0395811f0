#include "oim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace oim {

std::string format_g9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

static void write_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << cells[i];
    }
    os << '\n';
}

void write_csv(std::ostream& os, const std::string& config_json,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    os << "# config: " << config_json << '\n';
    write_row(os, header);
    for (const auto& row : rows) write_row(os, row);
}

void write_csv_file(const std::string& path, const std::string& config_json,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream ss;
    write_csv(ss, config_json, header, rows);
    write_text_file(path, ss.str());
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::ios_base::failure("cannot open for writing: " + path);
    f << content;
    f.flush();
    if (!f) throw std::ios_base::failure("write failed: " + path);
}

} // namespace oim
