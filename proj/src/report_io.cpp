#include "freemax/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "freemax/errors.hpp"

namespace freemax {

namespace {

constexpr const char* kHeader = "n,sup_error,argmax_x,A_n,B_n,g_at_norm,n_inv";

double parse_double(const std::string& field)
{
    if (field == "inf")
        return std::numeric_limits<double>::infinity();
    if (field == "-inf")
        return -std::numeric_limits<double>::infinity();
    if (field == "nan")
        return std::numeric_limits<double>::quiet_NaN();
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size())
        throw InvalidArgument("malformed number in report CSV: " + field);
    return v;
}

// JSON has no infinities or NaN; they are written as null.
nlohmann::json number_or_null(double v)
{
    return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

} // namespace

std::string format_machine(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_report_csv(std::ostream& out, const ConvergenceReport& report)
{
    out << kHeader << '\n';
    for (const auto& r : report.per_n) {
        out << r.n << ',' << format_machine(r.sup_error) << ',' << format_machine(r.argmax_x) << ','
            << format_machine(r.a_lower) << ',' << format_machine(r.b_upper) << ','
            << format_machine(r.g_at_norm) << ',' << format_machine(r.n_inv) << '\n';
    }
}

ConvergenceReport read_report_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != kHeader)
        throw InvalidArgument("report CSV must start with the header row");
    ConvergenceReport report;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        if (fields.size() != 7)
            throw InvalidArgument("report CSV row needs 7 fields: " + line);
        ConvergenceRow r;
        r.n = std::stoll(fields[0]);
        r.sup_error = parse_double(fields[1]);
        r.argmax_x = parse_double(fields[2]);
        r.a_lower = parse_double(fields[3]);
        r.b_upper = parse_double(fields[4]);
        r.g_at_norm = parse_double(fields[5]);
        r.n_inv = parse_double(fields[6]);
        report.per_n.push_back(r);
    }
    return report;
}

std::string report_summary_json(const ConvergenceReport& report)
{
    nlohmann::json j;
    j["fitted_slope"] = number_or_null(report.fitted_slope);
    j["bound_satisfied"] = report.bound_satisfied;
    j["C"] = number_or_null(report.constant);
    j["n_threshold"] = report.n_threshold;
    return j.dump(2);
}

void apply_summary_json(const std::string& json_text, ConvergenceReport& report)
{
    const auto j = nlohmann::json::parse(json_text);
    auto num = [&](const char* key) {
        const auto& v = j.at(key);
        return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
    };
    report.fitted_slope = num("fitted_slope");
    report.bound_satisfied = j.at("bound_satisfied").get<bool>();
    report.constant = num("C");
    report.n_threshold = j.at("n_threshold").get<std::int64_t>();
}

void write_plot_data(std::ostream& out, const ConvergenceReport& report)
{
    out << "# log_n log_sup_error\n";
    for (const auto& r : report.per_n)
        out << format_machine(std::log(static_cast<double>(r.n))) << ' '
            << format_machine(std::log(r.sup_error)) << '\n';
}

} // namespace freemax
