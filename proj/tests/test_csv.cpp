#include <catch_amalgamated.hpp>

#include <microrib/csv.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace microrib;

TEST_CASE("shortest round-trip numbers", "[csv]")
{
    CHECK(fmt(0.1) == "0.1");
    CHECK(fmt(1.0) == "1");
    CHECK(fmt(-2.5e-20) == "-2.5e-20");
    CHECK(fmt(std::nan("")) == "nan");
    CHECK(fmt(INFINITY) == "inf");
    CHECK(fmt(-INFINITY) == "-inf");
    for (double v : {M_PI, 1.0 / 3.0, 12.119999999999999, 6.02214076e23, 5e-324})
        CHECK(std::strtod(fmt(v).c_str(), nullptr) == v);
}

TEST_CASE("table layout", "[csv]")
{
    CsvTable t({"a", "b"});
    t.comment("header line");
    t.row({1.5, 2.0});
    t.row({std::string("x"), std::string("y")});
    CHECK(t.size() == 2);
    CHECK(t.str() == "# header line\na,b\n1.5,2\nx,y\n");
}

TEST_CASE("atomic write", "[csv]")
{
    std::string path = "microrib_csv_test.csv";
    write_atomic(path, "a\n1\n");
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "a\n1\n");
    CHECK_FALSE(std::ifstream(path + ".tmp").good());
    std::remove(path.c_str());
    CHECK_THROWS_AS(write_atomic("/nonexistent/dir/out.csv", "x"), Error);
}
