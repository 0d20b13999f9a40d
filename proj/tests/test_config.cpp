#include "padic_lfn/config.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace padic_lfn;

TEST(RunConfig, Defaults) {
    const run_config c;
    EXPECT_EQ(c.truncation, 64);
    EXPECT_EQ(c.prime_bound, 100000);
    EXPECT_EQ(c.series_length, 1000000);
    EXPECT_DOUBLE_EQ(c.tolerance, 1e-9);
    EXPECT_EQ(c.coset_cap, 1000000u);
    EXPECT_EQ(c.format, output_format::json);
    EXPECT_NO_THROW(c.validate());
}

TEST(RunConfig, LoadsKeyValueLines) {
    std::istringstream in("# comment\ntruncation = 40\n\nprime_bound=5000  # trailing\nformat = tsv\nthreads = 3\n");
    run_config c;
    c.load(in);
    EXPECT_EQ(c.truncation, 40);
    EXPECT_EQ(c.prime_bound, 5000);
    EXPECT_EQ(c.format, output_format::tsv);
    EXPECT_EQ(c.threads, 3u);
}

TEST(RunConfig, RejectsBadInput) {
    run_config c;
    EXPECT_THROW(c.set("precision", "3"), math_error);
    EXPECT_THROW(c.set("truncation", "many"), math_error);
    EXPECT_THROW(c.set("format", "xml"), math_error);
    std::istringstream no_eq("truncation 4\n");
    EXPECT_THROW(c.load(no_eq), math_error);
    EXPECT_THROW(c.load_file("/nonexistent/padic.cfg"), math_error);

    run_config bad;
    bad.tolerance = 1.5;
    EXPECT_THROW(bad.validate(), math_error);
    bad = {};
    bad.truncation = 0;
    EXPECT_THROW(bad.validate(), math_error);
}
