#include "vclab/runio.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace vclab {

void RunConfig::set(const std::string& key, const std::string& value) {
    for (auto& kv : params)
        if (kv.first == key) {
            kv.second = value;
            return;
        }
    params.emplace_back(key, value);
}

void RunConfig::set(const std::string& key, double value) {
    set(key, fmt_double(value));
}

void RunConfig::set(const std::string& key, int value) {
    set(key, std::to_string(value));
}

const std::string* RunConfig::find(const std::string& key) const {
    for (const auto& kv : params)
        if (kv.first == key) return &kv.second;
    return nullptr;
}

std::string fmt_double(double v) {
    // Shortest representation that parses back exactly.
    for (int prec = 1; prec <= 17; ++prec) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) return buf;
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<double> parse_grid(const std::string& text) {
    double lo = 0, hi = 0, step = 0;
    char extra = 0;
    int got = std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &lo, &hi, &step, &extra);
    require(got == 3, "grid must look like lo:hi:step, got '" + text + "'");
    require(std::isfinite(lo) && std::isfinite(hi) && std::isfinite(step),
            "grid endpoints and step must be finite");
    require(step > 0.0, "grid step must be > 0");
    require(hi >= lo, "grid needs hi >= lo");
    require((hi - lo) / step < 1e6, "grid would have over a million points");

    std::vector<double> out;
    for (int i = 0;; ++i) {
        double v = lo + i * step;
        if (v > hi + 0.5 * step) break;
        out.push_back(std::min(v, hi));
    }
    return out;
}

void OutputTable::row(std::vector<std::string> r) {
    rows.push_back(std::move(r));
}

namespace {

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    q += '"';
    return q;
}

void join_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
        if (i) os << ',';
        os << csv_quote(cells[i]);
    }
    os << '\n';
}

} // namespace

void write_csv(std::ostream& os, const RunConfig& cfg, const OutputTable& t) {
    os << "# command=" << cfg.command << '\n';
    for (const auto& kv : cfg.params)
        os << "# " << kv.first << '=' << kv.second << '\n';
    join_row(os, t.header);
    for (const auto& r : t.rows) join_row(os, r);
}

void write_json(std::ostream& os, const RunConfig& cfg, const OutputTable& t) {
    nlohmann::ordered_json j;
    j["command"] = cfg.command;
    nlohmann::ordered_json conf = nlohmann::ordered_json::object();
    for (const auto& kv : cfg.params) conf[kv.first] = kv.second;
    j["config"] = std::move(conf);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (size_t i = 0; i < t.header.size() && i < r.size(); ++i)
            obj[t.header[i]] = r[i];
        rows.push_back(std::move(obj));
    }
    j["rows"] = std::move(rows);
    os << j.dump(2) << '\n';
}

void emit_table(const std::string& path, const std::string& format,
                const RunConfig& cfg, const OutputTable& t) {
    require(format == "csv" || format == "json",
            "unknown output format '" + format + "' (want csv or json)");
    auto write = [&](std::ostream& os) {
        if (format == "csv")
            write_csv(os, cfg, t);
        else
            write_json(os, cfg, t);
        if (!os) throw io_error("write failed for '" +
                                (path.empty() ? std::string("<stdout>") : path) +
                                "'");
    };
    if (path.empty()) {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream f(path);
    if (!f) throw io_error("cannot open '" + path + "' for writing");
    write(f);
    f.flush();
    if (!f) throw io_error("write failed for '" + path + "'");
}

} // namespace vclab
