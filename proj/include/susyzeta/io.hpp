#ifndef SUSYZETA_IO_HPP
#define SUSYZETA_IO_HPP

// CSV and JSON forms of zero tables, potential profiles and residual reports.
// Reals are written with 17 significant digits so a parse restores them exactly.

#include <susyzeta/errors.hpp>
#include <susyzeta/grid_lab.hpp>
#include <susyzeta/susy.hpp>
#include <susyzeta/zeros.hpp>

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace susyzeta::io {

using json = nlohmann::json;

inline std::string format_real(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return {buf, res.ptr};
}

inline double parse_real(std::string_view text)
{
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
        text.remove_prefix(1);
    }
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
        text.remove_suffix(1);
    }
    if (text == "nan") {
        return std::nan("");
    }
    if (text == "inf") {
        return HUGE_VAL;
    }
    if (text == "-inf") {
        return -HUGE_VAL;
    }
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw ConfigError("parse_real: not a number: '" + std::string(text) + "'");
    }
    return v;
}

inline std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

inline std::string format_complex(complex z)
{
    return format_real(z.real()) + (std::signbit(z.imag()) ? "" : "+") + format_real(z.imag()) + "i";
}

// Zero tables

inline constexpr std::string_view zero_csv_header = "lambda,zeta_residual,hamiltonian_residual,bracket_lo,bracket_hi";

inline void write_zeros_csv(std::ostream& os, const std::vector<ZeroRecord>& records)
{
    os << zero_csv_header << '\n';
    for (const ZeroRecord& r : records) {
        os << format_real(r.lambda_star) << ',' << format_real(r.zeta_residual) << ','
           << format_real(r.hamiltonian_residual) << ',' << format_real(r.bracket.lo) << ','
           << format_real(r.bracket.hi) << '\n';
    }
}

inline std::vector<ZeroRecord> read_zeros_csv(std::istream& is)
{
    std::string line;
    std::vector<ZeroRecord> out;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        if (!header_seen) {
            if (line != zero_csv_header) {
                throw ConfigError("read_zeros_csv: unexpected header '" + line + "'");
            }
            header_seen = true;
            continue;
        }
        const auto f = split_fields(line);
        if (f.size() != 5) {
            throw ConfigError("read_zeros_csv: expected 5 fields, got " + std::to_string(f.size()));
        }
        out.push_back({parse_real(f[0]), parse_real(f[1]), parse_real(f[2]), {parse_real(f[3]), parse_real(f[4])}});
    }
    return out;
}

inline json zero_to_json(const ZeroRecord& r)
{
    return {{"lambda", r.lambda_star},
            {"zeta_residual", r.zeta_residual},
            {"hamiltonian_residual", r.hamiltonian_residual},
            {"bracket_lo", r.bracket.lo},
            {"bracket_hi", r.bracket.hi}};
}

inline json zeros_to_json(const std::vector<ZeroRecord>& records)
{
    json arr = json::array();
    for (const ZeroRecord& r : records) {
        arr.push_back(zero_to_json(r));
    }
    return arr;
}

inline std::vector<ZeroRecord> zeros_from_json(const json& arr)
{
    std::vector<ZeroRecord> out;
    for (const json& j : arr) {
        out.push_back({j.at("lambda").get<double>(),
                       j.at("zeta_residual").get<double>(),
                       j.at("hamiltonian_residual").get<double>(),
                       {j.at("bracket_lo").get<double>(), j.at("bracket_hi").get<double>()}});
    }
    return out;
}

// Potential profiles

inline void write_potentials_csv(std::ostream& os, const PotentialTable& table)
{
    os << "# S0 = " << format_complex(table.seed.s0);
    for (const PotentialColumn& c : table.columns) {
        os << "; " << c.name << " coupling = " << format_complex(c.coupling);
    }
    if (!table.note.empty()) {
        os << "; " << table.note;
    }
    os << '\n' << 'x';
    for (const PotentialColumn& c : table.columns) {
        os << ",re_" << c.name << ",im_" << c.name;
    }
    os << '\n';
    for (std::size_t i = 0; i < table.x.size(); ++i) {
        os << format_real(table.x[i]);
        for (const complex& v : table.values[i]) {
            os << ',' << format_real(v.real()) << ',' << format_real(v.imag());
        }
        os << '\n';
    }
}

struct CsvTable {
    std::vector<std::string> comments;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

inline CsvTable read_csv(std::istream& is)
{
    CsvTable t;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line.front() == '#') {
            t.comments.push_back(line);
            continue;
        }
        const auto fields = split_fields(line);
        if (t.header.empty()) {
            for (auto f : fields) {
                t.header.emplace_back(f);
            }
            continue;
        }
        if (fields.size() != t.header.size()) {
            throw ConfigError("read_csv: row has " + std::to_string(fields.size()) + " fields, header has " +
                              std::to_string(t.header.size()));
        }
        std::vector<double> row;
        row.reserve(fields.size());
        for (auto f : fields) {
            row.push_back(parse_real(f));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

inline json complex_to_json(complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline json potentials_to_json(const PotentialTable& table)
{
    json cols = json::array();
    for (const PotentialColumn& c : table.columns) {
        cols.push_back({{"name", c.name}, {"coupling", complex_to_json(c.coupling)}});
    }
    json rows = json::array();
    for (std::size_t i = 0; i < table.x.size(); ++i) {
        json row = {{"x", table.x[i]}};
        for (std::size_t j = 0; j < table.columns.size(); ++j) {
            row[table.columns[j].name] = complex_to_json(table.values[i][j]);
        }
        rows.push_back(std::move(row));
    }
    return {{"s0", complex_to_json(table.seed.s0)}, {"note", table.note}, {"columns", cols}, {"rows", rows}};
}

// Residual reports

inline const char* to_string(grid::Spacing s) { return s == grid::Spacing::uniform ? "uniform" : "log_uniform"; }

template <class Real>
json residual_report_to_json(const grid::ResidualReport<Real>& r)
{
    const auto num = [](Real v) -> json {
        const auto d = static_cast<double>(v);
        return std::isfinite(d) ? json(d) : json(nullptr);
    };
    return {{"relative_l2", num(r.relative_l2)},
            {"max_relative", num(r.max_relative)},
            {"convergence_order", num(r.convergence_order)},
            {"grid",
             {{"x_min", static_cast<double>(r.grid.x_min)},
              {"x_max", static_cast<double>(r.grid.x_max)},
              {"n_points", r.grid.n_points},
              {"spacing", to_string(r.grid.spacing)}}}};
}

} // namespace susyzeta::io

#endif
