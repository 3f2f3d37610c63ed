#include "fracpont/io.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

using namespace fracpont;
namespace fs = std::filesystem;

namespace {

fs::path tmp_file(const std::string& name) {
    auto dir = fs::temp_directory_path() / "fracpont_io_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

} // namespace

TEST_CASE("path CSV round trip is lossless") {
    Grid grid(0.0, 1.0, 16);
    auto path = sample_path(grid, 2, [](double t, std::span<double> out) {
        out[0] = std::sin(17.3 * t) * 1e-7;
        out[1] = std::exp(4.0 * t) - 3.0;
    });
    auto file = tmp_file("roundtrip.csv");
    write_path_csv(path, file.string());
    auto back = read_path_csv(file.string());
    CHECK(back.grid() == path.grid());
    CHECK(back.dim() == 2);
    CHECK(back.values() == path.values()); // bitwise, 17 significant digits
}

TEST_CASE("path CSV header and row layout") {
    Grid grid(0.0, 1.0, 3);
    auto path = sample_path(grid, 2, [](double t, std::span<double> out) {
        out[0] = t;
        out[1] = 2.0 * t;
    });
    auto file = tmp_file("header.csv");
    write_path_csv(path, file.string());
    std::ifstream in(file);
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,v1,v2");
    std::getline(in, line);
    CHECK(line == "0,0,0");
    size_t rows = 2;
    while (std::getline(in, line))
        if (!line.empty())
            ++rows;
    CHECK(rows == 5); // header + 4 nodes
}

TEST_CASE("write_path_csv is deterministic byte for byte") {
    Grid grid(0.0, 1.0, 8);
    auto path = sample_scalar(grid, [](double t) { return std::cos(3.0 * t) / 7.0; });
    auto f1 = tmp_file("det1.csv");
    auto f2 = tmp_file("det2.csv");
    write_path_csv(path, f1.string());
    write_path_csv(path, f2.string());
    CHECK(slurp(f1) == slurp(f2));
    CHECK(!slurp(f1).empty());
}

TEST_CASE("read_path_csv error paths") {
    CHECK_THROWS_AS(read_path_csv((tmp_file("nonexistent.csv")).string() + ".nope"),
                    std::runtime_error);

    auto f = tmp_file("bad.csv");
    spill(f, "");
    CHECK_THROWS_AS(read_path_csv(f.string()), std::runtime_error);

    spill(f, "x,v1\n0,1\n0.5,2\n1,3\n");
    CHECK_THROWS_WITH_AS(read_path_csv(f.string()),
                         doctest::Contains("header must be t"), std::runtime_error);

    spill(f, "t\n0\n0.5\n1\n"); // no value columns
    CHECK_THROWS_AS(read_path_csv(f.string()), std::runtime_error);

    spill(f, "t,v1\n0,1\n0.5\n1,3\n"); // short row
    CHECK_THROWS_WITH_AS(read_path_csv(f.string()), doctest::Contains("expected 2 fields"),
                         std::runtime_error);

    spill(f, "t,v1\n0,1\n0.5,two\n1,3\n");
    CHECK_THROWS_WITH_AS(read_path_csv(f.string()), doctest::Contains("not a number"),
                         std::runtime_error);

    spill(f, "t,v1\n0,1\n1,3\n"); // only 2 data rows
    CHECK_THROWS_WITH_AS(read_path_csv(f.string()), doctest::Contains("at least 3"),
                         std::runtime_error);

    spill(f, "t,v1\n0,1\n0.4,2\n1,3\n"); // non-uniform spacing
    CHECK_THROWS_WITH_AS(read_path_csv(f.string()),
                         doctest::Contains("not uniformly spaced"), std::runtime_error);
}

TEST_CASE("read_path_csv tolerates CRLF and blank lines") {
    auto f = tmp_file("crlf.csv");
    spill(f, "t,v1\r\n0,1\r\n0.5,2\r\n\r\n1,3\r\n");
    auto path = read_path_csv(f.string());
    CHECK(path.grid().n == 2);
    CHECK(path.at(1, 0) == 2.0);
}

TEST_CASE("iterate CSV columns follow t,q,u,p,dHdv order") {
    Grid grid(0.0, 1.0, 4);
    auto q = sample_path(grid, 2, [](double t, std::span<double> o) { o[0] = t; o[1] = -t; });
    auto u = sample_scalar(grid, [](double t) { return 2.0 * t; });
    auto p = sample_path(grid, 2, [](double t, std::span<double> o) { o[0] = 1 - t; o[1] = t * t; });
    auto g = sample_scalar(grid, [](double t) { return 3.0 * t; });
    PontryaginIterate it{q, u, p, g, 1.25, 0.5, 7, true, {2.0, 1.5, 1.25}};

    auto f = tmp_file("iterate.csv");
    write_iterate_csv(it, f.string());
    std::ifstream in(f);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t,q1,q2,u1,p1,p2,dHdv1");

    // the generic reader accepts the table as a 6-column path
    auto table = read_path_csv(f.string());
    CHECK(table.dim() == 6);
    CHECK(table.at(4, 0) == 1.0);  // q1(b)
    CHECK(table.at(4, 2) == 2.0);  // u1(b)
    CHECK(table.at(4, 5) == 3.0);  // dHdv1(b)
}

TEST_CASE("iterate_summary carries the four summary fields") {
    Grid grid(0.0, 1.0, 4);
    auto z = zero_path(grid, 1);
    PontryaginIterate it{z, z, z, z, 0.125, 3e-7, 12, true, {}};
    auto doc = iterate_summary(it);
    CHECK(doc.at("cost").get<double>() == 0.125);
    CHECK(doc.at("stationarity").get<double>() == 3e-7);
    CHECK(doc.at("iterations").get<std::size_t>() == 12);
    CHECK(doc.at("converged").get<bool>() == true);
    CHECK(doc.size() == 4);
}

TEST_CASE("write_json emits parseable, newline-terminated output") {
    auto f = tmp_file("doc.json");
    nlohmann::json doc{{"b", 2}, {"a", std::vector<int>{1, 2, 3}}};
    write_json(doc, f.string());
    auto text = slurp(f);
    CHECK(!text.empty());
    CHECK(text.back() == '\n');
    CHECK(nlohmann::json::parse(text) == doc);
    // deterministic
    auto f2 = tmp_file("doc2.json");
    write_json(doc, f2.string());
    CHECK(slurp(f2) == text);
}
