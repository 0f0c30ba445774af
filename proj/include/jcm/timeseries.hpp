#pragma once
// Uniform-grid time series with named columns and `# key = value` metadata,
// serialized as CSV.  This is the repository's stable data contract: values
// are written with 17 significant digits so write -> read round-trips are
// bit-exact, metadata keys are kept sorted, newlines are LF.

#include <map>
#include <string>
#include <vector>

namespace jcm {

struct TimeSeries {
    std::string t_name = "T";  // first-column name ("T", or "n" for profiles)
    std::vector<double> t;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    std::map<std::string, std::string> metadata;

    // Throws InvalidParameter on length mismatch or duplicate name.
    void add_column(std::string name, std::vector<double> values);

    bool has_column(const std::string& name) const;
    const std::vector<double>& column(const std::string& name) const;
};

// Grid contract: strictly increasing, constant step to 1e-12 of the span.
// Throws InvalidParameter with the offending index.
void validate_grid(const TimeSeries& s);

// Round-trip-exact formatting of one double (17 significant digits).
std::string csv_double(double x);

// CSV text of the whole series (validates the grid first).
std::string to_csv(const TimeSeries& s);

// to_csv written to a file; IoError carries the path.
void write_csv(const TimeSeries& s, const std::string& path);

// Inverse of write_csv.  Metadata lines are optional (files without them
// load with empty metadata).  Malformed rows raise ParseError with the
// 1-based line number.
TimeSeries read_csv(const std::string& path);

} // namespace jcm
