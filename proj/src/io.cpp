#include "fracpont/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace fracpont {

namespace {

void append_value(std::string& line, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    line += buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& text, const std::string& filename, size_t line_no) {
    const char* begin = text.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw std::runtime_error(filename + ":" + std::to_string(line_no) +
                                 ": not a number: '" + text + "'");
    return v;
}

void write_table(const std::string& filename, const std::string& header,
                 const Grid& grid, const std::vector<const SampledPath*>& blocks) {
    std::ofstream out(filename);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + filename);
    out << header << '\n';
    for (size_t i = 0; i < grid.node_count(); ++i) {
        std::string line;
        append_value(line, grid.node(i));
        for (const SampledPath* block : blocks) {
            for (size_t k = 0; k < block->dim(); ++k) {
                line += ',';
                append_value(line, block->at(i, k));
            }
        }
        out << line << '\n';
    }
    if (!out)
        throw std::runtime_error("write failed: " + filename);
}

} // namespace

void write_path_csv(const SampledPath& path, const std::string& filename) {
    std::string header = "t";
    for (size_t k = 1; k <= path.dim(); ++k)
        header += ",v" + std::to_string(k);
    write_table(filename, header, path.grid(), {&path});
}

SampledPath read_path_csv(const std::string& filename) {
    std::ifstream in(filename);
    if (!in)
        throw std::runtime_error("cannot open for reading: " + filename);
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error(filename + ": empty file");
    auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "t")
        throw std::runtime_error(filename + ": header must be t,<col>,...");
    const size_t dim = header.size() - 1;

    std::vector<double> times;
    std::vector<double> values;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        auto fields = split_csv_line(line);
        if (fields.size() != dim + 1)
            throw std::runtime_error(filename + ":" + std::to_string(line_no) +
                                     ": expected " + std::to_string(dim + 1) + " fields, got " +
                                     std::to_string(fields.size()));
        times.push_back(parse_double(fields[0], filename, line_no));
        for (size_t k = 1; k < fields.size(); ++k)
            values.push_back(parse_double(fields[k], filename, line_no));
    }
    if (times.size() < 3)
        throw std::runtime_error(filename + ": need at least 3 data rows");

    const size_t n = times.size() - 1;
    Grid grid(times.front(), times.back(), n);
    const double tol = 1e-9 * (1.0 + std::abs(grid.a) + std::abs(grid.b));
    for (size_t i = 0; i <= n; ++i)
        if (std::abs(times[i] - grid.node(i)) > tol)
            throw std::runtime_error(filename + ": t column is not uniformly spaced (row " +
                                     std::to_string(i + 2) + ")");

    return SampledPath(grid, dim, std::move(values));
}

void write_iterate_csv(const PontryaginIterate& iterate, const std::string& filename) {
    std::string header = "t";
    auto add_cols = [&](const char* stem, size_t count) {
        for (size_t k = 1; k <= count; ++k)
            header += "," + std::string(stem) + std::to_string(k);
    };
    add_cols("q", iterate.q.dim());
    add_cols("u", iterate.u.dim());
    add_cols("p", iterate.p.dim());
    add_cols("dHdv", iterate.gradient.dim());
    write_table(filename, header, iterate.q.grid(),
                {&iterate.q, &iterate.u, &iterate.p, &iterate.gradient});
}

nlohmann::json iterate_summary(const PontryaginIterate& iterate) {
    return nlohmann::json{{"cost", iterate.cost},
                          {"stationarity", iterate.stationarity},
                          {"iterations", iterate.iterations},
                          {"converged", iterate.converged}};
}

void write_json(const nlohmann::json& doc, const std::string& filename) {
    std::ofstream out(filename);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + filename);
    out << doc.dump(2) << '\n';
    if (!out)
        throw std::runtime_error("write failed: " + filename);
}

} // namespace fracpont
