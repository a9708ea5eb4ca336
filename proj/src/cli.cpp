#include "freemax/cli.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "freemax/dist_catalog.hpp"
#include "freemax/errors.hpp"
#include "freemax/evd.hpp"
#include "freemax/free_maxconv.hpp"
#include "freemax/harness.hpp"
#include "freemax/norming.hpp"
#include "freemax/numeric.hpp"
#include "freemax/report_io.hpp"
#include "freemax/von_mises.hpp"

namespace freemax {

namespace {

enum class Format { Csv, Json, Human };

using Cell = std::variant<double, std::int64_t, std::string, bool>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string human_number(double v)
{
    if (!std::isfinite(v))
        return format_machine(v);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string cell_text(const Cell& c, Format fmt)
{
    if (const double* d = std::get_if<double>(&c))
        return fmt == Format::Human ? human_number(*d) : format_machine(*d);
    if (const auto* i = std::get_if<std::int64_t>(&c))
        return std::to_string(*i);
    if (const bool* b = std::get_if<bool>(&c))
        return *b ? "true" : "false";
    return std::get<std::string>(c);
}

nlohmann::json cell_json(const Cell& c)
{
    if (const double* d = std::get_if<double>(&c)) {
        if (!std::isfinite(*d))
            return nullptr;
        // Round-trips through the 17-digit text form.
        return nlohmann::json::parse(format_machine(*d));
    }
    if (const auto* i = std::get_if<std::int64_t>(&c))
        return *i;
    if (const bool* b = std::get_if<bool>(&c))
        return *b;
    return std::get<std::string>(c);
}

void render(std::ostream& out, const Table& t, Format fmt)
{
    if (fmt == Format::Json) {
        auto arr = nlohmann::json::array();
        for (const auto& row : t.rows) {
            nlohmann::json obj = nlohmann::json::object();
            for (std::size_t i = 0; i < t.columns.size(); ++i)
                obj[t.columns[i]] = cell_json(row[i]);
            arr.push_back(obj);
        }
        out << (t.rows.size() == 1 ? arr[0] : arr).dump(2) << '\n';
        return;
    }
    std::vector<std::vector<std::string>> text;
    for (const auto& row : t.rows) {
        std::vector<std::string> r;
        for (const auto& c : row)
            r.push_back(cell_text(c, fmt));
        text.push_back(std::move(r));
    }
    if (fmt == Format::Csv) {
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            out << (i ? "," : "") << t.columns[i];
        out << '\n';
        for (const auto& r : text) {
            for (std::size_t i = 0; i < r.size(); ++i)
                out << (i ? "," : "") << r[i];
            out << '\n';
        }
        return;
    }
    std::vector<std::size_t> width(t.columns.size());
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        width[i] = t.columns[i].size();
        for (const auto& r : text)
            width[i] = std::max(width[i], r[i].size());
    }
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t i = 0; i < r.size(); ++i) {
            out << (i ? "  " : "") << r[i];
            if (i + 1 < r.size())
                out << std::string(width[i] - r[i].size(), ' ');
        }
        out << '\n';
    };
    line(t.columns);
    for (const auto& r : text)
        line(r);
}

struct DistArgs {
    std::string dist;
    std::optional<double> alpha;
    std::optional<double> k;
    std::optional<double> omega;
};

void add_dist_options(CLI::App* cmd, DistArgs& d)
{
    cmd->add_option("--dist", d.dist, "catalog distribution")->required();
    cmd->add_option("--alpha", d.alpha, "tail index");
    cmd->add_option("--K", d.k, "endpoint_power scale");
    cmd->add_option("--omega", d.omega, "endpoint_power right endpoint");
}

CatalogEntry entry_from(const DistArgs& d)
{
    const auto names = catalog_param_names(d.dist);
    auto params = catalog_default_params(d.dist);
    const std::map<std::string, std::optional<double>> given{
        {"alpha", d.alpha}, {"K", d.k}, {"omega", d.omega}};
    for (const auto& [key, value] : given) {
        if (!value)
            continue;
        const auto it = std::find(names.begin(), names.end(), key);
        if (it == names.end())
            throw InvalidArgument(d.dist + " takes no --" + key + " parameter");
        params[static_cast<std::size_t>(it - names.begin())] = *value;
    }
    return builtin(d.dist, params);
}

std::string params_text(const CatalogEntry& e)
{
    const auto names = catalog_param_names(e.spec.name);
    std::string s;
    for (std::size_t i = 0; i < names.size(); ++i)
        s += (i ? ";" : "") + names[i] + "=" + format_machine(e.params[i]);
    return s;
}

Interval parse_domain(const std::string& text)
{
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw InvalidArgument("--domain expects a,b");
    try {
        return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw InvalidArgument("--domain expects two numbers a,b");
    }
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw InvalidArgument("cannot write " + path);
    f << content;
    if (!f)
        throw InvalidArgument("failed writing " + path);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            bool out_is_terminal)
{
    CLI::App app{"Free extreme value convergence experiments", "freemax"};
    app.require_subcommand(1);

    std::string format_name;
    app.add_option("--format", format_name, "csv, json or human")
        ->check(CLI::IsMember({"csv", "json", "human"}));

    auto* list = app.add_subcommand("list", "catalog entries with regime and alpha");

    DistArgs norm_dist;
    std::int64_t norm_n = 0;
    auto* norming = app.add_subcommand("norming", "norming constants a_n, b_n");
    add_dist_options(norming, norm_dist);
    norming->add_option("--n", norm_n)->required();

    DistArgs dens_dist;
    std::int64_t dens_n = 0;
    double dens_x = 0;
    auto* density = app.add_subcommand("density", "w_n(x) and the window (A_n, B_n)");
    add_dist_options(density, dens_dist);
    density->add_option("--n", dens_n)->required();
    density->add_option("--x", dens_x)->required();

    DistArgs vm_dist;
    double vm_xmin = 0, vm_xmax = 0;
    std::size_t vm_points = 100;
    bool vm_auto = false;
    auto* vonmises = app.add_subcommand("vonmises", "h and its envelope on a grid");
    add_dist_options(vonmises, vm_dist);
    vonmises->add_option("--xmin", vm_xmin)->required();
    vonmises->add_option("--xmax", vm_xmax)->required();
    vonmises->add_option("--points", vm_points);
    vonmises->add_flag("--auto", vm_auto, "use the running maximum of |h| as envelope");

    std::string which;
    double lm_a1 = 1, lm_a2 = 2, lm_a = 0.5;
    DistArgs lm_dist;
    std::int64_t lm_n = 1000;
    double lm_xmin = 1.0, lm_xmax = 100.0;
    std::size_t lm_points = 1000;
    auto* lemmas = app.add_subcommand("lemmas", "gap bounds and the n(-log F) sandwich");
    lemmas->add_option("--which", which)
        ->required()
        ->check(CLI::IsMember({"frechet_gap", "xphi_gap", "u_gap", "sandwich"}));
    lemmas->add_option("--alpha1", lm_a1);
    lemmas->add_option("--alpha2", lm_a2);
    lemmas->add_option("--a", lm_a);
    lemmas->add_option("--dist", lm_dist.dist);
    lemmas->add_option("--alpha", lm_dist.alpha);
    lemmas->add_option("--K", lm_dist.k);
    lemmas->add_option("--omega", lm_dist.omega);
    lemmas->add_option("--n", lm_n);
    lemmas->add_option("--xmin", lm_xmin);
    lemmas->add_option("--xmax", lm_xmax);
    lemmas->add_option("--points", lm_points);

    DistArgs cv_dist;
    std::int64_t cv_nmin = 100, cv_nmax = 100000;
    int cv_per_decade = 4;
    std::size_t cv_grid = 100000;
    std::string cv_domain, cv_out, cv_reference = "max_of_both";
    auto* converge = app.add_subcommand("converge", "sup-norm density error against n");
    add_dist_options(converge, cv_dist);
    converge->add_option("--nmin", cv_nmin);
    converge->add_option("--nmax", cv_nmax);
    converge->add_option("--per-decade", cv_per_decade);
    converge->add_option("--grid", cv_grid);
    converge->add_option("--domain", cv_domain, "compact interval a,b");
    converge->add_option("--reference", cv_reference)
        ->check(CLI::IsMember({"n_inv", "g_at_norm", "max_of_both"}));
    converge->add_option("--out", cv_out, "prefix for .csv, .json and .dat files");

    double wt_alpha = -0.25;
    std::int64_t wt_n = 1000;
    auto* witness = app.add_subcommand("witness", "point where w_n stays 1 away from the limit");
    witness->add_option("--alpha", wt_alpha)->required();
    witness->add_option("--n", wt_n)->required();

    for (auto* sub : app.get_subcommands({}))
        sub->fallthrough();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "freemax: " << e.what() << '\n';
        return kExitValidation;
    }

    Format fmt = out_is_terminal ? Format::Human : Format::Csv;
    if (format_name == "csv")
        fmt = Format::Csv;
    else if (format_name == "json")
        fmt = Format::Json;
    else if (format_name == "human")
        fmt = Format::Human;

    try {
        if (list->parsed()) {
            Table t{{"name", "regime", "alpha", "params", "envelope"}, {}};
            for (const auto& name : catalog_names()) {
                const auto e = builtin_default(name);
                t.rows.push_back({name, to_string(e.regime.kind), e.alpha, params_text(e),
                                  static_cast<bool>(e.envelope)});
            }
            render(out, t, fmt);
            return kExitOk;
        }
        if (norming->parsed()) {
            const auto e = entry_from(norm_dist);
            const auto np = norming_for(e, norm_n);
            render(out,
                   Table{{"a_n", "b_n", "residual", "non_unique"},
                         {{np.a, np.b, np.residual, np.non_unique}}},
                   fmt);
            return kExitOk;
        }
        if (density->parsed()) {
            const auto e = entry_from(dens_dist);
            const FreePower fp = make_free_power(e, dens_n);
            const double w = density_wn(fp, dens_x);
            render(out,
                   Table{{"x", "w_n", "A_n", "B_n"},
                         {{dens_x, w, fp.window().a_lower, fp.window().b_upper.as_double()}}},
                   fmt);
            return kExitOk;
        }
        if (vonmises->parsed()) {
            if (!(vm_xmin < vm_xmax) || vm_points < 2)
                throw InvalidArgument("vonmises needs xmin < xmax and at least 2 points");
            const auto e = entry_from(vm_dist);
            const auto grid = numeric::linspace(vm_xmin, vm_xmax, vm_points);
            const auto rep = check_membership(e, {}, grid,
                                              vm_auto ? EnvelopeMode::Auto : EnvelopeMode::Catalog);
            Table t{{"x", "h", "g"}, {}};
            for (std::size_t i = 0; i < rep.h_values.size(); ++i)
                t.rows.push_back(
                    {rep.h_values[i].first, rep.h_values[i].second, rep.envelope_values[i].second});
            render(out, t, fmt);
            if (fmt == Format::Human)
                out << "certified=" << (rep.certified ? "true" : "false")
                    << " domination_ok=" << (rep.domination_ok ? "true" : "false")
                    << " monotone_ok=" << (rep.monotone_ok ? "true" : "false")
                    << " skipped=" << rep.skipped << '\n';
            const bool violated = rep.certified && !(rep.domination_ok && rep.monotone_ok);
            return violated ? kExitBoundViolated : kExitOk;
        }
        if (lemmas->parsed()) {
            if (which == "frechet_gap" || which == "xphi_gap") {
                const auto g = which == "frechet_gap" ? frechet_gap_bound(lm_a1, lm_a2)
                                                      : xphi_gap_bound(lm_a1, lm_a2);
                render(out,
                       Table{{"sup_gap", "grid_sup", "argmax", "bound", "violated"},
                             {{g.sup_gap, g.grid_sup, g.argmax, g.bound, g.violated}}},
                       fmt);
                return g.violated ? kExitBoundViolated : kExitOk;
            }
            if (which == "u_gap") {
                const auto g = u_gap_bound(lm_a);
                render(out,
                       Table{{"sup_gap_plus", "sup_gap_minus", "bound", "outside_hypothesis",
                              "violated"},
                             {{g.sup_gap_plus, g.sup_gap_minus, g.bound, g.outside_hypothesis,
                               g.violated}}},
                       fmt);
                return g.violated ? kExitBoundViolated : kExitOk;
            }
            if (lm_dist.dist.empty())
                throw InvalidArgument("sandwich needs --dist");
            if (!(lm_xmin < lm_xmax) || lm_points < 2)
                throw InvalidArgument("sandwich needs xmin < xmax and at least 2 points");
            const auto e = entry_from(lm_dist);
            const auto rep = sandwich_check(e, lm_n, numeric::linspace(lm_xmin, lm_xmax, lm_points));
            render(out,
                   Table{{"holds", "g_at_norm", "lower_violation", "upper_violation", "points"},
                         {{rep.holds, rep.g_at_norm, rep.lower_violation, rep.upper_violation,
                           static_cast<std::int64_t>(rep.points)}}},
                   fmt);
            return rep.holds ? kExitOk : kExitBoundViolated;
        }
        if (converge->parsed()) {
            ExperimentConfig cfg{entry_from(cv_dist), log_spaced_n(cv_nmin, cv_nmax, cv_per_decade),
                                 cv_grid, std::nullopt, RateReference::MaxOfBoth};
            if (!cv_domain.empty())
                cfg.domain_override = parse_domain(cv_domain);
            if (cv_reference == "n_inv")
                cfg.rate_reference = RateReference::NInv;
            else if (cv_reference == "g_at_norm")
                cfg.rate_reference = RateReference::GAtNorm;
            const auto report = run_experiment(cfg);

            if (!cv_out.empty()) {
                std::ostringstream csv, plot;
                write_report_csv(csv, report);
                write_plot_data(plot, report);
                write_file(cv_out + ".csv", csv.str());
                write_file(cv_out + ".json", report_summary_json(report) + "\n");
                write_file(cv_out + ".dat", plot.str());
            }
            if (fmt == Format::Csv) {
                write_report_csv(out, report);
            } else if (fmt == Format::Json) {
                out << report_summary_json(report) << '\n';
            } else {
                Table t{{"n", "sup_error", "argmax_x", "A_n", "B_n", "g_at_norm", "n_inv"}, {}};
                for (const auto& r : report.per_n)
                    t.rows.push_back(
                        {r.n, r.sup_error, r.argmax_x, r.a_lower, r.b_upper, r.g_at_norm, r.n_inv});
                render(out, t, fmt);
                out << "fitted_slope=" << human_number(report.fitted_slope)
                    << " C=" << human_number(report.constant)
                    << " bound_satisfied=" << (report.bound_satisfied ? "true" : "false")
                    << " n_threshold=" << report.n_threshold << '\n';
            }
            return report.bound_satisfied ? kExitOk : kExitBoundViolated;
        }
        if (witness->parsed()) {
            const auto w = nonconvergence_witness(wt_alpha, wt_n);
            render(out,
                   Table{{"x", "error", "direct_error", "window_lower"},
                         {{w.x, w.error, w.direct_error, w.window_lower}}}, fmt);
            return w.error >= 1 ? kExitOk : kExitBoundViolated;
        }
    } catch (const InvalidArgument& e) {
        err << "freemax: " << e.what() << '\n';
        return kExitValidation;
    } catch (const DomainError& e) {
        err << "freemax: " << e.what() << '\n';
        return kExitValidation;
    } catch (const SolverError& e) {
        err << "freemax: solver failed: " << e.what() << '\n';
        return 1;
    }
    return kExitValidation;
}

} // namespace freemax
