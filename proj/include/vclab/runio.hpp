#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "vclab/common.hpp"

namespace vclab {

// Effective settings of one invocation, carried verbatim into every
// output so a result file identifies the run that made it. Order is
// insertion order (deterministic output).
struct RunConfig {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;

    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, int value);
    const std::string* find(const std::string& key) const;
};

// Shortest decimal that round-trips a double (up to 17 significant
// digits), no locale surprises.
std::string fmt_double(double v);

// "lo:hi:step" -> inclusive grid (endpoint kept when it lands within
// half a step). Throws validation_error on malformed input.
std::vector<double> parse_grid(const std::string& text);

// A rectangular text table: header + string rows, emitted as CSV with
// the run config as leading '# key=value' comment lines, or as JSON
// with the config as a nested object.
struct OutputTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    void row(std::vector<std::string> r);
};

void write_csv(std::ostream& os, const RunConfig& cfg, const OutputTable& t);
void write_json(std::ostream& os, const RunConfig& cfg, const OutputTable& t);

// Dispatch on format ("csv" | "json"), writing to `path` or stdout when
// path is empty. Throws io_error when the file cannot be written and
// validation_error for an unknown format.
void emit_table(const std::string& path, const std::string& format,
                const RunConfig& cfg, const OutputTable& t);

} // namespace vclab
