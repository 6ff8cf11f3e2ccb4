// ltla: command-line front end for the lattice tree / animal engine.

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ltla/count_cache.hpp"
#include "ltla/expansion.hpp"
#include "ltla/generating.hpp"
#include "ltla/json_io.hpp"
#include "ltla/lace.hpp"
#include "ltla/onept_expansion.hpp"
#include "ltla/polyd.hpp"
#include "ltla/verify.hpp"

using namespace ltla;

namespace {

enum ExitCode { kPass = 0, kVerifyFailed = 1, kUsage = 2, kCeiling = 3 };

struct Table {
    std::string title;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

struct Output {
    Json result;
    std::vector<Table> tables;
    int exit_code = kPass;
};

std::string config_line(const RunConfig& c)
{
    std::ostringstream os;
    os << "# " << kEngineVersion << " command=" << c.command;
    if (!c.suite.empty()) {
        os << " suite=" << c.suite;
    }
    os << " model=" << c.model << " dim=" << c.dim << " order=" << c.order << " workers=" << c.workers
       << " cache_dir=" << c.cache_dir << " format=" << c.format;
    return os.str();
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string q = "\"";
    for (char ch : s) {
        q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    }
    return q + "\"";
}

void print_csv(std::ostream& os, const RunConfig& c, const std::vector<Table>& tables)
{
    os << config_line(c) << '\n';
    for (const auto& t : tables) {
        os << "# " << t.title << '\n';
        for (std::size_t i = 0; i < t.header.size(); ++i) {
            os << (i ? "," : "") << csv_field(t.header[i]);
        }
        os << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                os << (i ? "," : "") << csv_field(row[i]);
            }
            os << '\n';
        }
    }
}

void print_text(std::ostream& os, const RunConfig& c, const std::vector<Table>& tables)
{
    os << config_line(c) << '\n';
    for (const auto& t : tables) {
        os << '\n' << t.title << '\n';
        std::vector<std::size_t> width(t.header.size(), 0);
        for (std::size_t i = 0; i < t.header.size(); ++i) {
            width[i] = t.header[i].size();
        }
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) {
                width[i] = std::max(width[i], row[i].size());
            }
        }
        auto line = [&](const std::vector<std::string>& cells) {
            std::string out;
            for (std::size_t i = 0; i < cells.size(); ++i) {
                std::string cell = cells[i];
                if (i + 1 < cells.size()) {
                    cell.resize(std::max(cell.size(), width[i]), ' ');
                    cell += "  ";
                }
                out += cell;
            }
            os << out << '\n';
        };
        line(t.header);
        for (const auto& row : t.rows) {
            line(row);
        }
    }
}

/// Columns n, then one column per named series.
Table series_table(std::string title, const std::vector<std::pair<std::string, RSeries>>& cols)
{
    Table t{std::move(title), {"n"}, {}};
    int order = -1;
    for (const auto& [name, s] : cols) {
        t.header.push_back(name);
        order = std::max(order, s.order());
    }
    for (int n = 0; n <= order; ++n) {
        std::vector<std::string> row{std::to_string(n)};
        for (const auto& [name, s] : cols) {
            (void)name;
            row.push_back(n <= s.order() ? to_short_string(s[n]) : "");
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Json series_object(const std::vector<std::pair<std::string, RSeries>>& cols)
{
    Json j;
    for (const auto& [name, s] : cols) {
        j[name] = to_json(s);
    }
    return j;
}

Table checks_table(const std::vector<IdentityCheck>& checks)
{
    Table t{"checks", {"check", "result", "detail"}, {}};
    for (const auto& c : checks) {
        t.rows.push_back({c.name, c.holds ? "pass" : "FAIL", c.detail});
    }
    return t;
}

struct Context {
    RunConfig config;
    bool no_cache = false;
    bool origin_in_cycle = false;
    std::vector<int> contains;
    std::vector<int> dims{2, 3, 4, 5, 6, 8, 10, 20};
    std::string cache_action;
    std::string suite;

    Model model() const { return parse_model(config.model); }
    std::optional<CountCache> cache() const
    {
        if (no_cache) {
            return std::nullopt;
        }
        return CountCache(config.cache_dir);
    }
};

Output run_count(const Context& ctx)
{
    EnumerationSpec spec{ctx.model(), ctx.config.dim, ctx.config.order, {}};
    if (ctx.origin_in_cycle) {
        spec.constraints.push_back(OriginInCycle{});
    }
    if (!ctx.contains.empty()) {
        if (static_cast<int>(ctx.contains.size()) != ctx.config.dim) {
            throw std::invalid_argument("--contains needs exactly d coordinates");
        }
        Point x(ctx.config.dim);
        for (int i = 0; i < ctx.config.dim; ++i) {
            x.set(i, ctx.contains[static_cast<std::size_t>(i)]);
        }
        spec.constraints.push_back(ContainsVertex{x});
    }
    const auto cache = ctx.cache();
    const CountTable t = cached_count(spec, ctx.config.workers, cache ? &*cache : nullptr);
    Output out;
    out.result = to_json(t);
    Table tab{"counts (" + t.constraints + ")", {"n", "count"}, {}};
    for (int n = 0; n <= t.max_bonds; ++n) {
        tab.rows.push_back({std::to_string(n), t[n].str()});
    }
    out.tables.push_back(std::move(tab));
    return out;
}

Output run_series(const Context& ctx)
{
    const auto b = series_bundle(ctx.model(), ctx.config.dim, ctx.config.order, ctx.config.workers);
    const std::vector<std::pair<std::string, RSeries>> cols{{"g", b.g}, {"g_circ", b.g_circ}, {"r", b.r}, {"chi", b.chi}};
    Output out;
    out.result = series_object(cols);
    out.result["G"] = to_json(b.G);
    out.tables.push_back(series_table("one-point, planted and susceptibility series", cols));
    return out;
}

Output run_q(const Context& ctx)
{
    const int d = ctx.config.dim;
    const int N = ctx.config.order;
    const Point s = Point::unit(d, 0);
    const QData q = Q_decomposition(ctx.model(), d, N);
    std::vector<std::pair<std::string, RSeries>> cols{{"Q(s)", q.Q.at(s)}};
    for (int n = 0; n <= N; ++n) {
        const RSeries part = q.by_length[static_cast<std::size_t>(n)].at(s);
        if (!part.is_zero()) {
            cols.emplace_back("Q^" + std::to_string(n) + "(s)", part);
        }
    }
    cols.emplace_back("Q*(s)", Q_star(ctx.model(), d, N, s));
    Output out;
    out.result = series_object(cols);
    out.result["s"] = to_json(s);
    out.result["Q"] = to_json(q.Q);
    out.tables.push_back(series_table("Q at a neighbour s of the origin", cols));
    return out;
}

Output run_pi(const Context& ctx)
{
    const auto b = series_bundle(ctx.model(), ctx.config.dim, ctx.config.order, ctx.config.workers);
    const PiSolution sol = pi_solve(b.g, b.G);
    const LaceTerms t = lace_terms(ctx.model(), ctx.config.dim, std::min(ctx.config.order, kMaxLaceOrder));
    const std::vector<std::pair<std::string, RSeries>> cols{
        {"Pi_hat", sol.Pi_hat}, {"Pi_hat0", t.pi0.total()}, {"Pi_hat1", t.pi1.total()}, {"Pi_hat2", t.pi2.total()}};
    Output out;
    out.result = series_object(cols);
    out.result["residual_vanishes"] = sol.residual.support_size() == 0;
    out.result["Pi"] = to_json(sol.Pi);
    out.tables.push_back(series_table("Pi_hat solved from G, and the lace terms N = 0, 1, 2", cols));
    return out;
}

Output run_gamma(const Context& ctx)
{
    const OneptExpansion X = onept_expansion(ctx.model(), ctx.config.dim, ctx.config.order, ctx.config.workers);
    std::vector<std::pair<std::string, RSeries>> cols{
        {"g", X.g},           {"Gamma0", X.gamma0}, {"Gamma1", X.gamma1}, {"Gamma2", X.gamma2},
        {"Gamma3", X.gamma3}, {"tildeGamma4", X.gamma4_tilde}, {"g_circ", X.g_circ}, {"Z1", X.Z1},
        {"Z2", X.Z2},         {"Z3", X.Z3},         {"Z'", X.Zp},         {"Z''", X.Zpp}};
    for (const auto& [key, s] : X.split) {
        cols.emplace_back("Gamma(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")", s);
    }
    Output out;
    out.result = series_object(cols);
    out.result["tuples"] = X.tuples;
    out.tables.push_back(series_table("one-point expansion", cols));
    return out;
}

Output run_polyd(const Context& ctx)
{
    const ProperTable t = proper_counts(ctx.model(), ctx.config.order, ctx.config.workers);
    Output out;
    Json rows = Json::array();
    Table proper{"proper counts P(n,k)", {"n"}, {}};
    for (int k = 0; k <= t.max_bonds; ++k) {
        proper.header.push_back("k=" + std::to_string(k));
    }
    Table polys{"count polynomials in d", {"n", "polynomial"}, {}};
    for (int n = 0; n <= t.max_bonds; ++n) {
        std::vector<std::string> row{std::to_string(n)};
        Json pj = Json::array();
        for (int k = 0; k <= t.max_bonds; ++k) {
            row.push_back(t.at(n, k).str());
            pj.push_back(t.at(n, k).str());
        }
        proper.rows.push_back(std::move(row));
        const DPoly p = poly_from_proper(t, n);
        polys.rows.push_back({std::to_string(n), p.to_string()});
        Json r;
        r["n"] = n;
        r["proper"] = std::move(pj);
        r["polynomial"] = to_json(p);
        rows.push_back(std::move(r));
    }
    out.result["model"] = std::string(to_string(t.model));
    out.result["rows"] = std::move(rows);
    out.tables.push_back(std::move(proper));
    out.tables.push_back(std::move(polys));
    return out;
}

Output run_expansion(const Context& ctx)
{
    const ExpansionTable t = expansion_table(ctx.model(), ctx.config.order, ctx.dims);
    Output out;
    out.result = to_json(t);
    out.result["consistency"] = to_json(expansion_checks());
    Table rows{"z_c = e^-1 [sum c_k (2d)^-k], g_c = e [sum c_k (2d)^-k]",
               {"quantity", "k", "coefficient", "value", "status"}, {}};
    for (const auto& r : t.rows) {
        rows.rows.push_back({r.quantity, std::to_string(r.power), r.coeff.to_string(), format_double(r.coeff.to_double()),
                             r.rigorous ? "rigorous" : "predicted"});
    }
    Table partial{"partial sums", {"d", "z_c", "g_c"}, {}};
    for (std::size_t i = 0; i < t.dims.size(); ++i) {
        partial.rows.push_back({std::to_string(t.dims[i]), format_double(t.zc_partial[i]), format_double(t.gc_partial[i])});
    }
    out.tables.push_back(std::move(rows));
    out.tables.push_back(std::move(partial));
    const auto checks = expansion_checks();
    out.tables.push_back(checks_table(checks));
    out.exit_code = all_hold(checks) ? kPass : kVerifyFailed;
    return out;
}

Output run_ratio(const Context& ctx)
{
    const auto cache = ctx.cache();
    const CountTable counts
        = cached_count(EnumerationSpec{ctx.model(), ctx.config.dim, ctx.config.order, {}}, ctx.config.workers,
                       cache ? &*cache : nullptr);
    const RatioReport r = ratio_report(counts);
    Output out;
    out.result = to_json(r);
    Table tab{"count ratios", {"n", "count[n+1]/count[n]", "value"}, {}};
    for (std::size_t n = 0; n < r.ratios.size(); ++n) {
        tab.rows.push_back({std::to_string(n), to_short_string(r.ratios[n]), format_significant(r.ratios[n])});
    }
    Table pred{"prediction from three terms of z_c", {"lambda_pred", "final_ratio", "within_factor_two"},
               {{format_double(r.lambda_pred), format_double(r.final_ratio), r.within_factor_two ? "yes" : "no"}}};
    out.tables.push_back(std::move(tab));
    out.tables.push_back(std::move(pred));
    return out;
}

Output run_verify(const Context& ctx)
{
    const SuiteParams p{ctx.model(), ctx.config.dim, ctx.config.order, ctx.config.workers};
    SuiteReport r;
    Json reported = Json::array();
    if (ctx.suite == "smn") {
        std::vector<BoundComparison> animal;
        r = SuiteReport{"smn", p, verify_smn(p, &animal)};
        for (const auto& b : animal) {
            Json j;
            j["i"] = b.i;
            j["holds"] = b.holds;
            if (b.first_violation) {
                j["x"] = to_json(b.first_violation->x);
                j["order"] = b.first_violation->n;
            }
            reported.push_back(std::move(j));
        }
    } else {
        r = run_suite(ctx.suite, p);
    }
    Output out;
    out.result["suite"] = r.suite;
    out.result["passed"] = r.passed();
    out.result["checks"] = to_json(r.checks);
    if (!reported.empty()) {
        out.result["reported_animal_bound"] = std::move(reported);
    }
    out.tables.push_back(checks_table(r.checks));
    out.exit_code = r.passed() ? kPass : kVerifyFailed;
    return out;
}

Output run_cache(const Context& ctx)
{
    const CountCache cache(ctx.config.cache_dir);
    Output out;
    if (ctx.cache_action == "gc") {
        Json removed = Json::array();
        Table t{"removed", {"path"}, {}};
        for (const auto& p : cache.gc()) {
            removed.push_back(p.string());
            t.rows.push_back({p.string()});
        }
        out.result["removed"] = std::move(removed);
        out.tables.push_back(std::move(t));
        return out;
    }
    Json entries = Json::array();
    Table t{"cache entries", {"file", "model", "d", "N", "constraints", "engine", "valid"}, {}};
    for (const auto& e : cache.list()) {
        Json j;
        j["file"] = e.path.filename().string();
        j["model"] = e.model;
        j["dim"] = e.dim;
        j["max_bonds"] = e.max_bonds;
        j["constraints"] = e.constraints;
        j["engine"] = e.engine;
        j["valid"] = e.valid;
        entries.push_back(std::move(j));
        t.rows.push_back({e.path.filename().string(), e.model, std::to_string(e.dim), std::to_string(e.max_bonds),
                          e.constraints, e.engine, e.valid ? "yes" : "no"});
    }
    out.result["entries"] = std::move(entries);
    out.tables.push_back(std::move(t));
    return out;
}

void add_common(CLI::App* sub, Context& ctx, bool with_model = true)
{
    if (with_model) {
        sub->add_option("--model", ctx.config.model, "tree or animal")
            ->check(CLI::IsMember({"tree", "animal"}))
            ->capture_default_str();
        sub->add_option("--dim", ctx.config.dim, "lattice dimension d")->check(CLI::Range(1, kMaxDim))->capture_default_str();
        sub->add_option("--order", ctx.config.order, "truncation order N")->check(CLI::Range(0, kMaxOrder))->capture_default_str();
        sub->add_option("--workers", ctx.config.workers, "worker threads")->check(CLI::Range(1u, 256u))->capture_default_str();
    }
    sub->add_option("--cache-dir", ctx.config.cache_dir, "count cache directory (default $LTLA_CACHE_DIR)");
    sub->add_option("--format", ctx.config.format, "json, csv or text")
        ->check(CLI::IsMember({"json", "csv", "text"}))
        ->capture_default_str();
}

} // namespace

int main(int argc, char** argv)
{
    Context ctx;
    ctx.config.cache_dir = default_cache_dir().string();

    CLI::App app{"Exact enumeration and series identities for lattice trees and lattice animals"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kEngineVersion));

    auto* count_cmd = app.add_subcommand("count", "count clusters containing the origin by number of bonds");
    add_common(count_cmd, ctx);
    count_cmd->add_flag("--origin-in-cycle", ctx.origin_in_cycle, "only clusters with the origin on a cycle");
    count_cmd->add_option("--contains", ctx.contains, "only clusters containing this point")->delimiter(',');
    count_cmd->add_flag("--no-cache", ctx.no_cache, "bypass the count cache");

    auto* series_cmd = app.add_subcommand("series", "one-point, planted and two-point series and the susceptibility");
    add_common(series_cmd, ctx);
    auto* q_cmd = app.add_subcommand("q", "the pair-intersection function Q and Q*");
    add_common(q_cmd, ctx);
    auto* pi_cmd = app.add_subcommand("pi", "Pi solved from the two-point function, with the lace terms");
    add_common(pi_cmd, ctx);
    auto* gamma_cmd = app.add_subcommand("gamma", "the one-point expansion Gamma^(i) and Z quantities");
    add_common(gamma_cmd, ctx);
    auto* polyd_cmd = app.add_subcommand("polyd", "counts as polynomials in d from proper counts");
    add_common(polyd_cmd, ctx);

    auto* exp_cmd = app.add_subcommand("expansion-table", "1/d expansion coefficients of z_c and g_c");
    add_common(exp_cmd, ctx);
    exp_cmd->add_option("--dims", ctx.dims, "dimensions for the partial sums")->delimiter(',');

    auto* ratio_cmd = app.add_subcommand("ratio", "count ratios against the three-term prediction");
    add_common(ratio_cmd, ctx);
    ratio_cmd->add_flag("--no-cache", ctx.no_cache, "bypass the count cache");

    auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
    add_common(verify_cmd, ctx);
    verify_cmd->add_option("suite", ctx.suite, "suite name")->required()->check(CLI::IsMember(suite_names()));

    auto* cache_cmd = app.add_subcommand("cache", "inspect or clean the count cache");
    add_common(cache_cmd, ctx, false);
    cache_cmd->add_option("action", ctx.cache_action, "ls or gc")->required()->check(CLI::IsMember({"ls", "gc"}));

    polyd_cmd->callback([&] {
        if (polyd_cmd->count("--order") == 0) {
            ctx.config.order = kDefaultProperBonds;
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    CLI::App* chosen = app.get_subcommands().front();
    ctx.config.command = chosen->get_name();
    ctx.config.suite = ctx.suite;
    if (ctx.config.command == "cache") {
        ctx.config.model.clear();
    }

    Output out;
    try {
        const std::string& c = ctx.config.command;
        if (c == "count") {
            out = run_count(ctx);
        } else if (c == "series") {
            out = run_series(ctx);
        } else if (c == "q") {
            out = run_q(ctx);
        } else if (c == "pi") {
            out = run_pi(ctx);
        } else if (c == "gamma") {
            out = run_gamma(ctx);
        } else if (c == "polyd") {
            out = run_polyd(ctx);
        } else if (c == "expansion-table") {
            out = run_expansion(ctx);
        } else if (c == "ratio") {
            out = run_ratio(ctx);
        } else if (c == "verify") {
            out = run_verify(ctx);
        } else {
            out = run_cache(ctx);
        }
    } catch (const ResourceCeilingExceeded& e) {
        std::cerr << "ltla: resource ceiling: " << e.what() << '\n';
        return kCeiling;
    } catch (const std::invalid_argument& e) {
        std::cerr << "ltla: " << e.what() << '\n';
        return kUsage;
    } catch (const std::out_of_range& e) {
        std::cerr << "ltla: " << e.what() << '\n';
        return kUsage;
    }

    if (ctx.config.format == "json") {
        std::cout << envelope(ctx.config, out.result).dump(2) << '\n';
    } else if (ctx.config.format == "csv") {
        print_csv(std::cout, ctx.config, out.tables);
    } else {
        print_text(std::cout, ctx.config, out.tables);
    }
    return out.exit_code;
}
