#include "dualitylab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace dualitylab {

namespace {

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string format_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

std::string iso_timestamp_utc() {
    const std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ordered_json to_json(const RunConfig& cfg) {
    return ordered_json{{"command", cfg.command},
                        {"params", cfg.params},
                        {"output_dir", cfg.output_dir},
                        {"formats", cfg.formats},
                        {"seed", cfg.seed}};
}

ordered_json to_json(const ReportEnvelope& env) {
    return ordered_json{{"tool_version", env.tool_version},
                        {"timestamp", env.timestamp},
                        {"config_echo", to_json(env.config_echo)},
                        {"results", env.results},
                        {"diagnostics", env.diagnostics}};
}

RunConfig run_config_from_json(const ordered_json& j) {
    RunConfig cfg;
    cfg.command = j.at("command").get<std::string>();
    cfg.params = j.at("params");
    cfg.output_dir = j.at("output_dir").get<std::string>();
    cfg.formats = j.at("formats").get<std::vector<std::string>>();
    cfg.seed = j.at("seed").get<long>();
    return cfg;
}

ReportEnvelope envelope_from_json(const ordered_json& j) {
    ReportEnvelope env;
    env.tool_version = j.at("tool_version").get<std::string>();
    env.timestamp = j.at("timestamp").get<std::string>();
    env.config_echo = run_config_from_json(j.at("config_echo"));
    env.results = j.at("results");
    env.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
    return env;
}

ordered_json to_json(const FamilyPoint& p) {
    return ordered_json{{"n", p.n}, {"theta", p.theta}, {"Z", p.Z},
                        {"psi", p.psi}, {"eta", p.eta}, {"g", p.g}};
}

ordered_json to_json(const LatticeEmbedding& e) {
    ordered_json pts = ordered_json::array();
    for (const auto& p : e.points)
        pts.push_back(ordered_json{{"k", p.k}, {"theta", p.theta}, {"energy", p.energy}});
    return ordered_json{
        {"n", e.n},
        {"theta0", e.theta0},
        {"theta1", e.theta1},
        {"branch", e.branch == Branch::below_reference ? "below" : "above"},
        {"points", pts}};
}

ordered_json to_json(const GapTable& t) {
    ordered_json rows = ordered_json::array();
    for (const auto& g : t.entries)
        rows.push_back(ordered_json{{"k", g.k}, {"gap", g.gap}});
    return ordered_json{{"n", t.n}, {"theta0", t.theta0}, {"entries", rows}};
}

ordered_json to_json(const ClosureReport& r) {
    return ordered_json{{"n", r.n},
                        {"A", r.A},
                        {"B", r.B},
                        {"C", r.C},
                        {"energy_sum", r.energy_sum},
                        {"target_energy", r.target_energy},
                        {"defect", r.defect},
                        {"theta_R_energy", r.theta_R_energy},
                        {"theta_C", r.theta_C},
                        {"closed", r.closed}};
}

ordered_json to_json(const ThetaSum& s) {
    return ordered_json{{"value", s.value}, {"terms_used", s.terms_used}};
}

ordered_json to_json(const DualSum& s) {
    return ordered_json{{"value", s.value},
                        {"terms_used", s.terms_used},
                        {"quad_error", s.quad_error},
                        {"analytic_kernel", s.analytic_kernel}};
}

ordered_json to_json(const PoissonReport& r) {
    return ordered_json{{"n", r.n},
                        {"tau", r.tau},
                        {"primal_sum", r.primal_sum},
                        {"dual_sum", r.dual_sum},
                        {"residual", r.residual},
                        {"primal_terms", r.primal_terms},
                        {"dual_terms", r.dual_terms},
                        {"quad_error", r.quad_error}};
}

ordered_json to_json(const SpectralProfile& p) {
    ordered_json samples = ordered_json::array();
    for (const auto& [xi, f] : p.xi_samples)
        samples.push_back(ordered_json{{"xi", xi}, {"fhat", f}});
    ordered_json env = ordered_json::array();
    for (const auto& [xi, v] : p.envelope_points)
        env.push_back(ordered_json{{"xi", xi}, {"value", v}});
    return ordered_json{{"n", p.n},
                        {"q_hat", p.q_hat},
                        {"gamma_hat", p.gamma_hat},
                        {"fit_residual", p.fit_residual},
                        {"xi_samples", samples},
                        {"envelope_points", env}};
}

ordered_json to_json(const HyRatio& r) {
    return ordered_json{{"ratio", r.ratio}, {"beckner_bound", r.beckner_bound}};
}

ordered_json to_json(const MellinReport& r) {
    return ordered_json{{"n", r.n},
                        {"s", r.s},
                        {"numeric", r.numeric},
                        {"closed_form", r.closed_form},
                        {"residual", r.residual},
                        {"split_point", r.split_point}};
}

ordered_json to_json(const GammaScanRow& r) {
    ordered_json j{{"s", r.s}, {"ratio", r.ratio}};
    if (r.has_duplication) j["duplication_residual"] = r.duplication;
    return j;
}

std::string csv_gaps(const LatticeEmbedding& emb, const GapTable& table) {
    std::ostringstream out;
    out << "k,theta_k,gap\n";
    for (std::size_t i = 0; i < emb.points.size(); ++i) {
        out << emb.points[i].k << ',' << num17(emb.points[i].theta) << ',';
        if (i < table.entries.size()) out << num17(table.entries[i].gap);
        out << '\n';
    }
    return out.str();
}

std::string csv_profile_samples(const SpectralProfile& p) {
    std::ostringstream out;
    out << "xi,fhat\n";
    for (const auto& [xi, f] : p.xi_samples)
        out << num17(xi) << ',' << num17(f) << '\n';
    return out.str();
}

std::string csv_profile_envelope(const SpectralProfile& p) {
    std::ostringstream out;
    out << "xi,envelope\n";
    for (const auto& [xi, v] : p.envelope_points)
        out << num17(xi) << ',' << num17(v) << '\n';
    return out.str();
}

std::string csv_sweep(const std::string& xname,
                      const std::vector<std::pair<double, double>>& rows) {
    std::ostringstream out;
    out << xname << ",residual\n";
    for (const auto& [x, r] : rows) out << num17(x) << ',' << num17(r) << '\n';
    return out.str();
}

std::string csv_mellin(const std::vector<MellinReport>& rows) {
    std::ostringstream out;
    out << "n,s,numeric,closed_form,residual\n";
    for (const auto& r : rows)
        out << num17(r.n) << ',' << num17(r.s) << ',' << num17(r.numeric) << ','
            << num17(r.closed_form) << ',' << num17(r.residual) << '\n';
    return out.str();
}

std::string csv_gamma_scan(const std::vector<GammaScanRow>& rows) {
    std::ostringstream out;
    out << "s,ratio,duplication_residual\n";
    for (const auto& r : rows) {
        out << num17(r.s) << ',' << num17(r.ratio) << ',';
        if (r.has_duplication) out << num17(r.duplication);
        out << '\n';
    }
    return out.str();
}

namespace {

constexpr int kW = 640, kH = 480;
constexpr int kMargin = 60;

struct Scale {
    double xmin, xmax, ymin, ymax;
    double px(double x) const {
        return kMargin + (x - xmin) / (xmax - xmin) * (kW - 2 * kMargin);
    }
    double py(double y) const {
        return kH - kMargin - (y - ymin) / (ymax - ymin) * (kH - 2 * kMargin);
    }
};

void svg_open(std::ostringstream& s, const std::string& title) {
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
      << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << ' ' << kH
      << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
}

void svg_axes(std::ostringstream& s, const std::string& xlabel,
              const std::string& ylabel) {
    s << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
      << kW - 2 * kMargin << "\" height=\"" << kH - 2 * kMargin
      << "\" fill=\"none\" stroke=\"black\"/>\n"
      << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 16
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"13\">" << xlabel << "</text>\n"
      << "<text x=\"18\" y=\"" << kH / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
         "transform=\"rotate(-90 18 " << kH / 2 << ")\">" << ylabel
      << "</text>\n";
}

Scale fit_scale(const std::vector<std::pair<double, double>>& pts) {
    Scale sc{pts[0].first, pts[0].first, pts[0].second, pts[0].second};
    for (const auto& [x, y] : pts) {
        sc.xmin = std::min(sc.xmin, x);
        sc.xmax = std::max(sc.xmax, x);
        sc.ymin = std::min(sc.ymin, y);
        sc.ymax = std::max(sc.ymax, y);
    }
    if (sc.xmax == sc.xmin) sc.xmax = sc.xmin + 1.0;
    if (sc.ymax == sc.ymin) sc.ymax = sc.ymin + 1.0;
    return sc;
}

}  // namespace

std::string svg_profile(const SpectralProfile& p) {
    // Doubly-logarithmic view: the fitted decay law is a straight line of
    // slope q_hat in these coordinates.
    std::vector<std::pair<double, double>> pts;
    for (const auto& [xi, v] : p.envelope_points)
        if (xi > 0.0 && v > 0.0 && v < 0.9)
            pts.emplace_back(std::log(xi), std::log(-std::log(v)));
    std::ostringstream s;
    svg_open(s, "spectral profile, n = " + format_g(p.n));
    svg_axes(s, "ln xi", "ln(-ln envelope)");
    if (!pts.empty()) {
        const Scale sc = fit_scale(pts);
        for (const auto& [x, y] : pts)
            s << "<circle cx=\"" << sc.px(x) << "\" cy=\"" << sc.py(y)
              << "\" r=\"3\" fill=\"steelblue\"/>\n";
        const double c = std::log(p.gamma_hat);
        s << "<line x1=\"" << sc.px(sc.xmin) << "\" y1=\""
          << sc.py(p.q_hat * sc.xmin + c) << "\" x2=\"" << sc.px(sc.xmax)
          << "\" y2=\"" << sc.py(p.q_hat * sc.xmax + c)
          << "\" stroke=\"crimson\" stroke-width=\"1.5\"/>\n";
    }
    s << "<text x=\"" << kW - kMargin - 8 << "\" y=\"" << kMargin + 20
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"14\">"
      << "q_hat = " << format_g(p.q_hat) << "</text>\n</svg>\n";
    return s.str();
}

std::string svg_lattice(const LatticeEmbedding& emb, const GapTable& table) {
    std::ostringstream s;
    svg_open(s, "integer lattice in theta, n = " + format_g(emb.n));
    // Upper band: theta_k positions on a shared axis.
    double tmin = emb.theta0, tmax = emb.theta0;
    for (const auto& p : emb.points) {
        tmin = std::min(tmin, p.theta);
        tmax = std::max(tmax, p.theta);
    }
    if (tmax == tmin) tmax = tmin + 1.0;
    auto ax = [&](double t) {
        return kMargin + (t - tmin) / (tmax - tmin) * (kW - 2 * kMargin);
    };
    const int band_y = kMargin + 60;
    s << "<line x1=\"" << kMargin << "\" y1=\"" << band_y << "\" x2=\""
      << kW - kMargin << "\" y2=\"" << band_y << "\" stroke=\"black\"/>\n";
    s << "<circle cx=\"" << ax(emb.theta0) << "\" cy=\"" << band_y
      << "\" r=\"4\" fill=\"black\"/>\n";
    for (const auto& p : emb.points)
        s << "<circle cx=\"" << ax(p.theta) << "\" cy=\"" << band_y
          << "\" r=\"3\" fill=\"steelblue\"/>\n"
          << "<text x=\"" << ax(p.theta) << "\" y=\"" << band_y - 10
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"10\">" << p.k << "</text>\n";
    // Lower band: gap bars.
    if (!table.entries.empty()) {
        double gmax = 0.0;
        for (const auto& e : table.entries) gmax = std::max(gmax, e.gap);
        const int base = kH - kMargin;
        const int top = band_y + 50;
        const double bw =
            double(kW - 2 * kMargin) / double(table.entries.size());
        for (std::size_t i = 0; i < table.entries.size(); ++i) {
            const double h = (base - top) * table.entries[i].gap / gmax;
            s << "<rect x=\"" << kMargin + i * bw + 2 << "\" y=\"" << base - h
              << "\" width=\"" << bw - 4 << "\" height=\"" << h
              << "\" fill=\"darkseagreen\" stroke=\"black\"/>\n"
              << "<text x=\"" << kMargin + (i + 0.5) * bw << "\" y=\""
              << base + 14 << "\" text-anchor=\"middle\" "
                              "font-family=\"sans-serif\" font-size=\"10\">"
              << table.entries[i].k << "</text>\n";
        }
        s << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 16
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
             "font-size=\"13\">gap between theta_k and theta_k+1</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

std::string svg_sweep(const std::string& title, const std::string& xlabel,
                      const std::vector<std::pair<double, double>>& rows) {
    // Residuals span many decades; plot log10 on both axes.
    std::vector<std::pair<double, double>> pts;
    for (const auto& [x, r] : rows)
        pts.emplace_back(std::log10(x), std::log10(std::max(r, 1e-18)));
    std::ostringstream s;
    svg_open(s, title);
    svg_axes(s, "log10 " + xlabel, "log10 residual");
    if (!pts.empty()) {
        const Scale sc = fit_scale(pts);
        std::ostringstream poly;
        for (const auto& [x, y] : pts) poly << sc.px(x) << ',' << sc.py(y) << ' ';
        s << "<polyline points=\"" << poly.str()
          << "\" fill=\"none\" stroke=\"steelblue\"/>\n";
        for (const auto& [x, y] : pts)
            s << "<circle cx=\"" << sc.px(x) << "\" cy=\"" << sc.py(y)
              << "\" r=\"3\" fill=\"steelblue\"/>\n";
    }
    s << "</svg>\n";
    return s.str();
}

std::string write_artifact(const std::string& dir, const std::string& name,
                           const std::string& content) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " + ec.message());
    const std::string path = (fs::path(dir) / name).string();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write failed for " + path);
    return path;
}

}  // namespace dualitylab
