#pragma once

// JSON forms of the engine's values. Rationals are "num/den" strings; object
// keys keep insertion order so equal runs give identical bytes.

#include <json.hpp>

#include <string>
#include <vector>

#include "ltla/check.hpp"
#include "ltla/enumerate.hpp"
#include "ltla/expansion.hpp"
#include "ltla/polyd.hpp"
#include "ltla/rational.hpp"
#include "ltla/series.hpp"
#include "ltla/site_series.hpp"

namespace ltla {

using Json = nlohmann::ordered_json;

/// What was asked for, recorded in every output document.
struct RunConfig {
    std::string command;
    std::string model = "tree";
    int dim = 2;
    int order = 6;
    std::string suite;
    unsigned workers = 1;
    std::string cache_dir;
    std::string format = "json";
};

inline Json to_json(const RunConfig& c)
{
    Json j;
    j["command"] = c.command;
    j["model"] = c.model;
    j["dim"] = c.dim;
    j["order"] = c.order;
    if (!c.suite.empty()) {
        j["suite"] = c.suite;
    }
    j["workers"] = c.workers;
    j["cache_dir"] = c.cache_dir;
    j["format"] = c.format;
    return j;
}

inline Json envelope(const RunConfig& c, Json result)
{
    Json j;
    j["engine"] = std::string(kEngineVersion);
    j["config"] = to_json(c);
    j["result"] = std::move(result);
    return j;
}

inline Json to_json(const Point& x)
{
    Json j = Json::array();
    for (int i = 0; i < x.dim(); ++i) {
        j.push_back(x[i]);
    }
    return j;
}

inline Json to_json(const RSeries& s)
{
    Json j = Json::array();
    for (int i = 0; i <= s.order(); ++i) {
        j.push_back(to_fraction_string(s[i]));
    }
    return j;
}

inline RSeries series_from_json(const Json& j)
{
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument("series: expected a nonempty array");
    }
    RSeries s(static_cast<int>(j.size()) - 1);
    for (std::size_t i = 0; i < j.size(); ++i) {
        s[static_cast<int>(i)] = parse_rational(j[i].get<std::string>());
    }
    return s;
}

inline Json to_json(const SiteSeries& s)
{
    Json entries = Json::array();
    for (const auto& [x, v] : s.entries()) {
        Json e;
        e["x"] = to_json(x);
        e["series"] = to_json(v);
        entries.push_back(std::move(e));
    }
    Json j;
    j["dim"] = s.dim();
    j["order"] = s.order();
    j["entries"] = std::move(entries);
    return j;
}

inline Json to_json(const CountTable& t)
{
    Json j;
    j["model"] = std::string(to_string(t.model));
    j["dim"] = t.dim;
    j["max_bonds"] = t.max_bonds;
    j["constraints"] = t.constraints;
    Json counts = Json::array();
    for (const auto& c : t.counts) {
        counts.push_back(c.str());
    }
    j["counts"] = std::move(counts);
    return j;
}

inline CountTable count_table_from_json(const Json& j)
{
    CountTable t;
    t.model = parse_model(j.at("model").get<std::string>());
    t.dim = j.at("dim").get<int>();
    t.max_bonds = j.at("max_bonds").get<int>();
    t.constraints = j.at("constraints").get<std::string>();
    for (const auto& c : j.at("counts")) {
        t.counts.emplace_back(c.get<std::string>());
    }
    if (static_cast<int>(t.counts.size()) != t.max_bonds + 1) {
        throw std::invalid_argument("count table: wrong number of counts");
    }
    return t;
}

inline Json to_json(const DPoly& p)
{
    Json coeffs = Json::array();
    for (const auto& c : p.coeffs()) {
        coeffs.push_back(to_fraction_string(c));
    }
    Json j;
    j["coefficients"] = std::move(coeffs);
    j["text"] = p.to_string();
    return j;
}

inline Json to_json(const EulerRational& x)
{
    Json j;
    j["a0"] = to_fraction_string(x.a0);
    j["a1"] = to_fraction_string(x.a1);
    j["a2"] = to_fraction_string(x.a2);
    j["text"] = x.to_string();
    j["value"] = format_double(x.to_double());
    return j;
}

inline Json to_json(const IdentityCheck& c)
{
    Json j;
    j["name"] = c.name;
    j["holds"] = c.holds;
    if (c.first_bad_order >= 0) {
        j["first_bad_order"] = c.first_bad_order;
    }
    if (!c.detail.empty()) {
        j["detail"] = c.detail;
    }
    return j;
}

inline Json to_json(const std::vector<IdentityCheck>& cs)
{
    Json j = Json::array();
    for (const auto& c : cs) {
        j.push_back(to_json(c));
    }
    return j;
}

inline Json to_json(const ExpansionTable& t)
{
    Json rows = Json::array();
    for (const auto& r : t.rows) {
        Json row;
        row["quantity"] = r.quantity;
        row["power_of_inverse_2d"] = r.power;
        row["coefficient"] = to_json(r.coeff);
        row["status"] = r.rigorous ? "rigorous" : "predicted";
        rows.push_back(std::move(row));
    }
    Json partial = Json::array();
    for (std::size_t i = 0; i < t.dims.size(); ++i) {
        Json p;
        p["d"] = t.dims[i];
        p["z_c"] = format_double(t.zc_partial[i]);
        p["g_c"] = format_double(t.gc_partial[i]);
        partial.push_back(std::move(p));
    }
    Json j;
    j["model"] = std::string(to_string(t.model));
    j["z_c_prefactor"] = "e^-1";
    j["g_c_prefactor"] = "e";
    j["rows"] = std::move(rows);
    j["partial_sums"] = std::move(partial);
    j["note"] = "orders above 3 are physics-literature predictions with no rigorous error estimate";
    return j;
}

inline Json to_json(const RatioReport& r)
{
    Json rows = Json::array();
    for (std::size_t n = 0; n < r.ratios.size(); ++n) {
        Json row;
        row["n"] = n;
        row["ratio"] = to_fraction_string(r.ratios[n]);
        row["value"] = format_significant(r.ratios[n]);
        rows.push_back(std::move(row));
    }
    Json counts = Json::array();
    for (const auto& c : r.counts) {
        counts.push_back(c.str());
    }
    Json j;
    j["model"] = std::string(to_string(r.model));
    j["dim"] = r.dim;
    j["counts"] = std::move(counts);
    j["ratios"] = std::move(rows);
    j["lambda_pred"] = format_double(r.lambda_pred);
    j["final_ratio"] = format_double(r.final_ratio);
    j["within_factor_two"] = r.within_factor_two;
    return j;
}

} // namespace ltla
