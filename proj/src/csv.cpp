#include "gbas/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

namespace gbas {

std::string format_double(double value) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& text) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    while (first != last && *first == ' ') ++first;
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc{}) throw IoError("cannot parse number: '" + text + "'");
    return value;
}

std::string points_csv_header(Index dim) {
    std::string header = "kind,parent";
    for (Index d = 0; d < dim; ++d) header += ",coord_" + std::to_string(d);
    return header;
}

void write_points_csv(const std::filesystem::path& path, const std::vector<PointRow>& rows,
                      Index dim) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write points file: " + path.string());
    out << points_csv_header(dim) << '\n';
    for (const PointRow& row : rows) {
        if (row.coords.size() != dim)
            throw DimensionError("write_points_csv: row dimension mismatch");
        out << row.kind << ',' << row.parent;
        for (Index d = 0; d < dim; ++d) out << ',' << format_double(row.coords[d]);
        out << '\n';
    }
}

std::vector<PointRow> to_point_rows(const ExplorationResult& result) {
    std::vector<PointRow> rows;
    rows.reserve(result.accepted.size() + result.rejected.size());
    for (std::size_t i = 0; i < result.accepted.size(); ++i)
        rows.push_back({"accepted", result.parent[i], result.accepted[i]});
    for (const Vector& z : result.rejected) rows.push_back({"rejected", -1, z});
    return rows;
}

std::vector<PointRow> to_point_rows(const std::vector<Vector>& points, const std::string& kind) {
    std::vector<PointRow> rows;
    rows.reserve(points.size());
    for (const Vector& z : points) rows.push_back({kind, -1, z});
    return rows;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

std::vector<PointRow> read_points_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open points file: " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IoError("points file is empty: " + path.string());
    const auto header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "kind" || header[1] != "parent")
        throw IoError("points file has an unexpected header: " + path.string());
    const Index dim = static_cast<Index>(header.size()) - 2;

    std::vector<PointRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (static_cast<Index>(fields.size()) != dim + 2)
            throw IoError("points row has wrong field count: " + line);
        PointRow row;
        row.kind = fields[0];
        row.parent = static_cast<Index>(std::stoll(fields[1]));
        row.coords.resize(dim);
        for (Index d = 0; d < dim; ++d)
            row.coords[d] = parse_double(fields[static_cast<std::size_t>(d + 2)]);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<Vector> read_query_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open query file: " + path.string());
    std::vector<Vector> queries;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto fields = split_csv_line(line);
        Vector q(static_cast<Index>(fields.size()));
        for (std::size_t d = 0; d < fields.size(); ++d) q[static_cast<Index>(d)] = parse_double(fields[d]);
        queries.push_back(std::move(q));
    }
    if (queries.empty()) throw IoError("query file has no queries: " + path.string());
    return queries;
}

void write_pgm(const std::filesystem::path& path, Index width, Index height,
               const std::vector<std::uint8_t>& gray) {
    if (static_cast<Index>(gray.size()) != width * height)
        throw DimensionError("write_pgm: pixel count does not match dimensions");
    std::ofstream out(path);
    if (!out) throw IoError("cannot write image: " + path.string());
    out << "P2\n" << width << ' ' << height << "\n255\n";
    for (Index r = 0; r < height; ++r) {
        for (Index c = 0; c < width; ++c) {
            if (c) out << ' ';
            out << static_cast<int>(gray[static_cast<std::size_t>(r * width + c)]);
        }
        out << '\n';
    }
}

}  // namespace gbas
