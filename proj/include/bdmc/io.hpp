#ifndef BDMC_IO_HPP
#define BDMC_IO_HPP

// JSON and CSV formats.
//
// Channel file:
//   { "outputs": [ { "y": "<label>", "w0": <number>, "w1": <number> }, ... ] }
//
// CSV: "," separated, "\n" line endings, numbers with 17 significant digits,
// infinities written as "inf".

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "bdmc/bounds.hpp"
#include "bdmc/channel.hpp"
#include "bdmc/errors.hpp"
#include "bdmc/oracle.hpp"

namespace bdmc {

using json = nlohmann::ordered_json;

// Unreadable file or malformed document.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline json to_json(const Channel& ch)
{
    json outputs = json::array();
    for (const ChannelRow& r : ch.outputs()) {
        outputs.push_back({{"y", r.label}, {"w0", r.w0}, {"w1", r.w1}});
    }
    return {{"outputs", outputs}};
}

/// Parses and validates a channel document. Structural problems raise
/// invalid_channel naming the offending row.
inline Channel channel_from_json(const json& doc, bool strict = false)
{
    if (!doc.is_object() || !doc.contains("outputs") || !doc["outputs"].is_array()) {
        throw invalid_channel("channel document must be an object with an \"outputs\" array");
    }
    std::vector<ChannelRow> rows;
    std::size_t index = 0;
    for (const json& item : doc["outputs"]) {
        ++index;
        const std::string where = "row " + std::to_string(index);
        if (!item.is_object()) {
            throw invalid_channel(where + ": expected an object");
        }
        ChannelRow row;
        if (item.contains("y")) {
            const json& y = item["y"];
            row.label = y.is_string() ? y.get<std::string>() : y.dump();
        } else {
            row.label = std::to_string(index - 1);
        }
        for (const char* key : {"w0", "w1"}) {
            if (!item.contains(key) || !item[key].is_number()) {
                throw invalid_channel(where + " ('" + row.label + "'): missing or non-numeric \"" + key + "\"");
            }
        }
        row.w0 = item["w0"].get<double>();
        row.w1 = item["w1"].get<double>();
        rows.push_back(std::move(row));
    }
    return make_channel(std::move(rows), strict);
}

inline Channel read_channel_file(const std::string& path, bool strict = false)
{
    std::ifstream in(path);
    if (!in) {
        throw io_error("cannot open channel file '" + path + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw io_error("cannot parse '" + path + "': " + e.what());
    }
    return channel_from_json(doc, strict);
}

/// Whole-file write.
inline void write_text_file(const std::string& path, const std::string& contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw io_error("cannot write '" + path + "'");
    }
    out << contents;
    if (!out) {
        throw io_error("write to '" + path + "' failed");
    }
}

inline json to_json(const ChannelClass& c)
{
    json j = {{"kind", to_string(c.kind)}};
    j["parameter"] = c.parameter ? json(*c.parameter) : json(nullptr);
    return j;
}

inline json to_json(const BoundReport& r)
{
    json entries = json::array();
    for (const BoundEntry& e : r.entries) {
        entries.push_back({{"name", e.name},
                           {"lhs", e.lhs},
                           {"rhs", e.rhs},
                           {"slack", e.slack},
                           {"satisfied", e.satisfied},
                           {"tight", e.tight}});
    }
    return {{"I", r.capacity},
            {"Z", r.bhattacharyya},
            {"tol", r.tol.satisfy},
            {"tight_tol", r.tol.tight},
            {"channel_class", to_json(r.channel_class)},
            {"entries", entries}};
}

inline json to_json(const PropositionReport& r)
{
    return {{"hellinger_sq", r.hellinger_sq},
            {"jensen_shannon", r.jensen_shannon},
            {"upper_bound", r.upper_bound},
            {"lower_slack", r.lower_slack},
            {"upper_slack", r.upper_slack},
            {"pass", r.satisfied()}};
}

inline json to_json(const CertificateReport& r)
{
    json j;
    j["lemma"] = r.lemma;
    j["grid"] = r.grid;
    j["v_max"] = r.v_max ? json(*r.v_max) : json(nullptr);
    j["mode"] = r.mode;
    j["min_slack"] = r.min_slack;
    j["argmin"] = r.argmin;
    j["pass"] = r.pass;
    if (r.pad) {
        j["pad"] = *r.pad;
    }
    json checks = json::array();
    for (const CheckSummary& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"min_slack", c.min_slack},
                          {"argmin", c.argmin},
                          {"strict_min_slack", c.strict_min_slack},
                          {"strict_argmin", c.strict_argmin},
                          {"pass", c.pass}});
    }
    j["checks"] = checks;
    j["note"] = r.note;
    return j;
}

/// 17 significant digits, locale independent; "inf" / "-inf" / "nan".
inline std::string format_number(double x)
{
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return {buf, res.ptr};
}

/// Writes one CSV row.
inline void write_csv_row(std::ostream& out, std::initializer_list<double> values)
{
    bool first = true;
    for (double v : values) {
        if (!first) {
            out << ',';
        }
        out << format_number(v);
        first = false;
    }
    out << '\n';
}

inline std::string region_csv(const std::vector<RegionPoint>& points)
{
    std::ostringstream out;
    out << "z,one_minus_i\n";
    for (const RegionPoint& p : points) {
        write_csv_row(out, {p.z, p.one_minus_i});
    }
    return out.str();
}

/// Upper (1 - I = z) and lower (1 - I = phi(z)) edges of the region on a
/// uniform grid.
inline std::string region_boundary_csv(std::size_t grid = 256)
{
    std::ostringstream out;
    out << "z,upper,lower\n";
    for (std::size_t k = 0; k < grid; ++k) {
        const double z = (k + 1 == grid) ? 1.0 : static_cast<double>(k) / static_cast<double>(grid - 1);
        write_csv_row(out, {z, z, phi(z)});
    }
    return out.str();
}

/// phi on a uniform grid of [from, to], optionally with phi' and phi''.
/// phi''(0) is written as "inf".
inline std::string phi_table_csv(double from, double to, std::size_t steps, bool with_derivatives)
{
    if (!(from >= 0.0 && from < to && to <= 1.0)) {
        throw domain_error("phi table: need 0 <= from < to <= 1");
    }
    if (steps < 2) {
        throw domain_error("phi table: need at least two steps");
    }
    std::ostringstream out;
    out << (with_derivatives ? "u,phi,phi_d1,phi_d2\n" : "u,phi\n");
    const double span = to - from;
    for (std::size_t k = 0; k < steps; ++k) {
        const double u = (k + 1 == steps) ? to : from + span * (static_cast<double>(k) / static_cast<double>(steps - 1));
        if (!with_derivatives) {
            write_csv_row(out, {u, phi(u)});
            continue;
        }
        double d2 = 0.0;
        try {
            d2 = phi_d2(u);
        } catch (const divergence_error&) {
            d2 = std::numeric_limits<double>::infinity();
        }
        write_csv_row(out, {u, phi(u), phi_d1(u), d2});
    }
    return out.str();
}

}  // namespace bdmc

#endif  // BDMC_IO_HPP
