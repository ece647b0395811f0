#include "oim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace {

TEST(FormatG9, NineSignificantDigits) {
    EXPECT_EQ(oim::format_g9(0.12896393844978543), "0.128963938");
    EXPECT_EQ(oim::format_g9(1.0), "1");
    EXPECT_EQ(oim::format_g9(0.5), "0.5");
    EXPECT_EQ(oim::format_g9(1e-12), "1e-12");
    EXPECT_EQ(oim::format_g9(-0.670320046035), "-0.670320046");
    EXPECT_EQ(oim::format_g9(123456789.123), "123456789");
}

TEST(WriteCsv, LayoutIsStable) {
    std::ostringstream os;
    oim::write_csv(os, "{\"a\":1}", {"x", "y"}, {{"1", "2"}, {"3", "4"}});
    EXPECT_EQ(os.str(), "# config: {\"a\":1}\nx,y\n1,2\n3,4\n");
}

TEST(WriteCsv, FileRoundTrip) {
    const std::string path = ::testing::TempDir() + "oim_io_test.csv";
    oim::write_csv_file(path, "{}", {"a"}, {{"0.5"}});
    std::ifstream f(path);
    std::stringstream ss;
    ss << f.rdbuf();
    EXPECT_EQ(ss.str(), "# config: {}\na\n0.5\n");
    std::remove(path.c_str());
}

TEST(WriteCsv, UnwritablePathThrows) {
    EXPECT_THROW(oim::write_csv_file("/nonexistent-dir/x.csv", "{}", {"a"}, {}),
                 std::ios_base::failure);
    EXPECT_THROW(oim::write_text_file("/nonexistent-dir/x.txt", "hi"),
                 std::ios_base::failure);
}

} // namespace
