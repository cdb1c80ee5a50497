#include "xbicorr/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace xbicorr {

namespace {

using nlohmann::json;

std::string mode_name(PrewhitenMode mode) {
    return mode == PrewhitenMode::fixed ? "fixed" : "bic";
}

PrewhitenMode mode_from(const std::string& name) {
    if (name == "fixed") return PrewhitenMode::fixed;
    if (name == "bic") return PrewhitenMode::bic;
    throw std::invalid_argument("unknown prewhiten mode: " + name);
}

std::string scope_name(PrewhitenScope scope) {
    return scope == PrewhitenScope::per_window ? "per_window" : "full_sample";
}

PrewhitenScope scope_from(const std::string& name) {
    if (name == "per_window") return PrewhitenScope::per_window;
    if (name == "full_sample") return PrewhitenScope::full_sample;
    throw std::invalid_argument("unknown prewhiten scope: " + name);
}

}  // namespace

std::string format_number(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

json report_to_json(const PairReport& report) {
    json j;
    j["benchmark"] = report.benchmark_id;
    j["target"] = report.target_id;
    j["window_spec"] = {{"window_length", report.spec.window_length},
                        {"exponent", report.spec.exponent},
                        {"lag_depth", report.spec.lag_depth},
                        {"alpha", report.spec.alpha}};
    j["prewhiten"] = {{"mode", mode_name(report.prewhiten.mode)},
                      {"fixed_order", report.prewhiten.fixed_order},
                      {"p_max", report.prewhiten.p_max},
                      {"scope", scope_name(report.prewhiten.scope)}};
    j["n_windows"] = report.windows.size();
    j["n_significant"] = report.n_significant;
    j["pct_significant"] = report.pct_significant;
    j["full_sample_correlation"] = report.full_sample_correlation;

    json windows = json::array();
    for (const auto& w : report.windows) {
        json jw;
        jw["index"] = w.window_index;
        jw["start_date"] = to_string(w.start_date);
        jw["end_date"] = to_string(w.end_date);
        jw["correlation"] = w.window_correlation;
        jw["df_xy"] = w.df_xy;
        jw["df_xxy"] = w.df_xxy;
        if (w.skipped) {
            jw["skipped"] = true;
            jw["reason"] = w.skip_reason;
        } else {
            jw["h_xy"] = w.h_xy;
            jw["p_xy"] = w.p_xy;
            jw["h_xxy"] = w.h_xxy;
            jw["p_xxy"] = w.p_xxy;
        }
        windows.push_back(std::move(jw));
    }
    j["windows"] = std::move(windows);

    json plot = json::array();
    for (const auto& [idx, one_minus_p] : report.plot_series)
        plot.push_back(json::array({idx, one_minus_p}));
    j["plot_series"] = std::move(plot);
    return j;
}

PairReport report_from_json(const json& j) {
    PairReport report;
    report.benchmark_id = j.at("benchmark").get<std::string>();
    report.target_id = j.at("target").get<std::string>();
    const auto& spec = j.at("window_spec");
    report.spec.window_length = spec.at("window_length").get<int>();
    report.spec.exponent = spec.at("exponent").get<double>();
    report.spec.lag_depth = spec.at("lag_depth").get<int>();
    report.spec.alpha = spec.at("alpha").get<double>();
    const auto& pw = j.at("prewhiten");
    report.prewhiten.mode = mode_from(pw.at("mode").get<std::string>());
    report.prewhiten.fixed_order = pw.at("fixed_order").get<int>();
    report.prewhiten.p_max = pw.at("p_max").get<int>();
    report.prewhiten.scope = scope_from(pw.at("scope").get<std::string>());
    report.n_significant = j.at("n_significant").get<std::size_t>();
    report.pct_significant = j.at("pct_significant").get<double>();
    report.full_sample_correlation = j.at("full_sample_correlation").get<double>();

    for (const auto& jw : j.at("windows")) {
        WindowResult w;
        w.window_index = jw.at("index").get<int>();
        w.start_date = parse_iso_date(jw.at("start_date").get<std::string>());
        w.end_date = parse_iso_date(jw.at("end_date").get<std::string>());
        w.window_correlation = jw.at("correlation").get<double>();
        w.df_xy = jw.at("df_xy").get<int>();
        w.df_xxy = jw.at("df_xxy").get<int>();
        if (jw.value("skipped", false)) {
            w.skipped = true;
            w.skip_reason = jw.at("reason").get<std::string>();
            w.h_xy = w.h_xxy = std::nan("");
            w.p_xy = w.p_xxy = std::nan("");
        } else {
            w.h_xy = jw.at("h_xy").get<double>();
            w.p_xy = jw.at("p_xy").get<double>();
            w.h_xxy = jw.at("h_xxy").get<double>();
            w.p_xxy = jw.at("p_xxy").get<double>();
        }
        report.windows.push_back(std::move(w));
    }
    for (const auto& point : j.at("plot_series"))
        report.plot_series.emplace_back(point.at(0).get<int>(),
                                        point.at(1).get<double>());
    return report;
}

std::string report_to_csv(const PairReport& report) {
    std::ostringstream out;
    out << "window_index,start_date,end_date,status,h_xy,df_xy,p_xy,"
           "h_xxy,df_xxy,p_xxy,window_correlation\n";
    for (const auto& w : report.windows) {
        out << w.window_index << ',' << to_string(w.start_date) << ','
            << to_string(w.end_date) << ',';
        if (w.skipped) {
            out << "skipped: " << w.skip_reason << ",," << w.df_xy << ",,,"
                << w.df_xxy << ",," << format_number(w.window_correlation) << '\n';
        } else {
            out << "ok," << format_number(w.h_xy) << ',' << w.df_xy << ','
                << format_number(w.p_xy) << ',' << format_number(w.h_xxy) << ','
                << w.df_xxy << ',' << format_number(w.p_xxy) << ','
                << format_number(w.window_correlation) << '\n';
        }
    }
    return out.str();
}

std::string summaries_to_csv(std::span<const PairSummary> rows) {
    std::ostringstream out;
    out << "benchmark,target,n_windows,n_skipped,n_significant,pct_significant,"
           "full_sample_correlation,largest_window_correlation,largest_window_index\n";
    for (const auto& s : rows) {
        out << s.benchmark_id << ',' << s.target_id << ',' << s.n_windows << ','
            << s.n_skipped << ',' << s.n_significant << ','
            << format_number(s.pct_significant) << ','
            << format_number(s.full_sample_correlation) << ','
            << format_number(s.largest_window_correlation) << ','
            << s.largest_window_index << '\n';
    }
    return out.str();
}

json summaries_to_json(std::span<const PairSummary> rows) {
    json out = json::array();
    for (const auto& s : rows) {
        json j;
        j["benchmark"] = s.benchmark_id;
        j["target"] = s.target_id;
        j["n_windows"] = s.n_windows;
        j["n_skipped"] = s.n_skipped;
        j["n_significant"] = s.n_significant;
        j["pct_significant"] = s.pct_significant;
        j["full_sample_correlation"] = s.full_sample_correlation;
        j["largest_window_correlation"] = s.largest_window_correlation;
        j["largest_window_index"] = s.largest_window_index;
        json sig = json::array();
        for (const auto& w : s.significant_windows)
            sig.push_back({{"window_index", w.window_index},
                           {"start_date", to_string(w.start_date)},
                           {"end_date", to_string(w.end_date)}});
        j["significant_windows"] = std::move(sig);
        out.push_back(std::move(j));
    }
    return out;
}

std::string significant_windows_csv(const PairSummary& summary) {
    std::ostringstream out;
    out << "window_index,start_date,end_date\n";
    for (const auto& w : summary.significant_windows)
        out << w.window_index << ',' << to_string(w.start_date) << ','
            << to_string(w.end_date) << '\n';
    return out.str();
}

std::string plot_series_csv(const PairReport& report) {
    std::ostringstream out;
    out << "window_index,start_date,one_minus_p\n";
    std::size_t cursor = 0;
    for (const auto& [idx, one_minus_p] : report.plot_series) {
        while (cursor < report.windows.size() &&
               report.windows[cursor].window_index != idx)
            ++cursor;
        const Date start = cursor < report.windows.size()
                               ? report.windows[cursor].start_date
                               : Date{};
        out << idx << ',' << to_string(start) << ',' << format_number(one_minus_p)
            << '\n';
    }
    return out.str();
}

std::string stats_to_csv(std::span<const StatsRow> rows) {
    std::ostringstream out;
    out << "series,n,mean,min,max,std_dev,skewness,kurtosis,jarque_bera\n";
    for (const auto& [id, s] : rows) {
        out << id << ',' << s.n << ',' << format_number(s.mean) << ','
            << format_number(s.min) << ',' << format_number(s.max) << ','
            << format_number(s.std_dev) << ',' << format_number(s.skewness) << ','
            << format_number(s.kurtosis) << ',' << format_number(s.jarque_bera)
            << '\n';
    }
    return out.str();
}

json stats_to_json(std::span<const StatsRow> rows) {
    json out = json::array();
    for (const auto& [id, s] : rows) {
        out.push_back({{"series", id},
                       {"n", s.n},
                       {"mean", s.mean},
                       {"min", s.min},
                       {"max", s.max},
                       {"std_dev", s.std_dev},
                       {"skewness", s.skewness},
                       {"kurtosis", s.kurtosis},
                       {"jarque_bera", s.jarque_bera}});
    }
    return out;
}

std::string mc_to_csv(const std::string& mode, double theta, int n, int lag_depth,
                      const McResult& result) {
    std::ostringstream out;
    out << "mode,theta,n,lag_depth,alpha,replications,rejections,rejection_rate,seed\n"
        << mode << ',' << format_number(theta) << ',' << n << ',' << lag_depth << ','
        << format_number(result.alpha) << ',' << result.replications << ','
        << result.rejections << ',' << format_number(result.rejection_rate) << ','
        << result.seed << '\n';
    return out.str();
}

json mc_to_json(const std::string& mode, double theta, int n, int lag_depth,
                const McResult& result) {
    return {{"mode", mode},
            {"theta", theta},
            {"n", n},
            {"lag_depth", lag_depth},
            {"alpha", result.alpha},
            {"replications", result.replications},
            {"rejections", result.rejections},
            {"rejection_rate", result.rejection_rate},
            {"seed", result.seed}};
}

}  // namespace xbicorr
