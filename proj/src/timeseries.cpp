#include "jcm/timeseries.hpp"

#include "jcm/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace jcm {

void TimeSeries::add_column(std::string name, std::vector<double> values) {
    if (name.empty() || name == t_name || has_column(name))
        throw InvalidParameter("column name '" + name +
                               "' is empty or already taken");
    if (values.size() != t.size())
        throw InvalidParameter("column '" + name + "' has " +
                               std::to_string(values.size()) +
                               " values for a grid of " +
                               std::to_string(t.size()));
    names.push_back(std::move(name));
    columns.push_back(std::move(values));
}

bool TimeSeries::has_column(const std::string& name) const {
    return std::find(names.begin(), names.end(), name) != names.end();
}

const std::vector<double>& TimeSeries::column(const std::string& name) const {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end())
        throw InvalidParameter("no column named '" + name + "'");
    return columns[std::size_t(it - names.begin())];
}

void validate_grid(const TimeSeries& s) {
    const auto& t = s.t;
    if (t.size() < 2) return;  // nothing to compare
    const double step = t[1] - t[0];
    if (!(step > 0.0))
        throw InvalidParameter("grid must be strictly increasing");
    const double tol = 1e-12 * (t.back() - t.front());
    for (std::size_t i = 1; i + 1 < t.size(); ++i) {
        const double d = t[i + 1] - t[i];
        if (!(d > 0.0) || std::abs(d - step) > tol)
            throw InvalidParameter("grid step varies at index " +
                                   std::to_string(i + 1));
    }
}

std::string csv_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16e", x);
    return buf;
}

std::string to_csv(const TimeSeries& s) {
    validate_grid(s);
    for (const auto& col : s.columns)
        if (col.size() != s.t.size())
            throw InvalidParameter("column/grid length mismatch");

    std::string out;
    for (const auto& [key, value] : s.metadata)
        out += "# " + key + " = " + value + "\n";
    out += s.t_name;
    for (const auto& name : s.names) out += "," + name;
    out += "\n";
    for (std::size_t i = 0; i < s.t.size(); ++i) {
        out += csv_double(s.t[i]);
        for (const auto& col : s.columns) out += "," + csv_double(col[i]);
        out += "\n";
    }
    return out;
}

void write_csv(const TimeSeries& s, const std::string& path) {
    const std::string body = to_csv(s);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f.write(body.data(), std::streamsize(body.size()));
    f.flush();
    if (!f) throw IoError("write failed for '" + path + "'");
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (const char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& field, std::size_t line_no) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ParseError("line " + std::to_string(line_no) +
                         ": not a number: '" + field + "'");
    return v;
}

} // namespace

TimeSeries read_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for reading");

    TimeSeries s;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(f, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            const auto sep = line.find(" = ");
            if (sep != std::string::npos) {
                std::string key = line.substr(1, sep - 1);
                key.erase(0, key.find_first_not_of(' '));
                s.metadata[key] = line.substr(sep + 3);
            }
            continue;  // plain comments tolerated
        }
        const auto fields = split_fields(line);
        if (!have_header) {
            if (fields.empty() || fields.front().empty())
                throw ParseError("line " + std::to_string(line_no) +
                                 ": missing header row");
            s.t_name = fields.front();
            for (std::size_t i = 1; i < fields.size(); ++i) {
                s.names.push_back(fields[i]);
                s.columns.emplace_back();
            }
            have_header = true;
            continue;
        }
        if (fields.size() != s.names.size() + 1)
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(s.names.size() + 1) +
                             " fields, got " + std::to_string(fields.size()));
        s.t.push_back(parse_double(fields[0], line_no));
        for (std::size_t i = 1; i < fields.size(); ++i)
            s.columns[i - 1].push_back(parse_double(fields[i], line_no));
    }
    if (!have_header) throw ParseError("no header row found");
    try {
        validate_grid(s);
    } catch (const InvalidParameter& e) {
        throw ParseError(std::string("grid violates uniform contract: ") +
                         e.what());
    }
    return s;
}

} // namespace jcm
