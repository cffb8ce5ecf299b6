#pragma once

// Machine-readable outputs: CSV tables (period decimal separator, UTF-8,
// header row), JSON run manifests, and small static SVG line plots. Number
// formatting goes through one snprintf helper so identical runs produce
// byte-identical files.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "confspec/functionals.hpp"
#include "confspec/spectrum.hpp"

namespace confspec {

inline std::string format_number(double x, int digits = 17) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> cells) {
        if (cells.size() != header_.size())
            throw std::invalid_argument("CsvWriter: row width mismatch");
        rows_.push_back(std::move(cells));
    }

    std::string str() const {
        std::string out = join(header_);
        for (const auto& r : rows_) out += join(r);
        return out;
    }

    void write(const std::filesystem::path& path) const {
        std::ofstream f(path, std::ios::binary);
        if (!f) throw std::runtime_error("CsvWriter: cannot open " + path.string());
        f << str();
    }

private:
    static std::string join(const std::vector<std::string>& cells) {
        std::string line;
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) line += ',';
            line += cells[i];
        }
        line += '\n';
        return line;
    }
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// SpectrumResult as CSV: index k, eigenvalue, multiplicity, block j, L.
inline CsvWriter spectrum_csv(const SpectrumResult& res, std::int64_t max_rows = 200) {
    CsvWriter csv({"k", "eigenvalue", "multiplicity", "block_j", "L"});
    std::int64_t k = 0;
    for (const auto& e : res.entries()) {
        if (k >= max_rows) break;
        csv.add_row({std::to_string(k), format_number(e.value), std::to_string(e.multiplicity),
                     std::to_string(e.block), std::to_string(res.truncation())});
        k += e.multiplicity;
    }
    return csv;
}

/// Sweep rows as CSV; the certified-bound column is filled only for rows
/// that carry one (certification is a separate, heavier pipeline).
inline CsvWriter sweep_csv(const std::vector<SweepRow>& rows) {
    CsvWriter csv({"family", "params", "n", "k", "lambda_k", "lambda_bar_k", "ratio",
                   "volume_normalized", "hersch_gap"});
    for (const auto& r : rows)
        csv.add_row({r.family, r.params, std::to_string(r.n), std::to_string(r.k),
                     format_number(r.lambda_k), format_number(r.lambda_bar),
                     format_number(r.ratio), format_number(r.volume_normalized),
                     format_number(r.hersch_gap)});
    return csv;
}

inline nlohmann::json bound_report_json(const BoundReport& rep) {
    nlohmann::json j;
    j["k"] = rep.k;
    j["solver_index"] = rep.solver_index;
    j["certified_bound"] = rep.certified_bound;
    j["solver_value"] = rep.solver_value;
    j["normalized_bound"] = rep.normalized_bound;
    j["bound_ratio"] = rep.bound_ratio;
    j["solver_ratio"] = rep.solver_ratio;
    j["achieved_c"] = rep.achieved_c;
    j["quotients"] = rep.quotients;
    auto& anns = j["annuli"] = nlohmann::json::array();
    for (const auto& a : rep.selected_annuli) {
        anns.push_back({{"center_index", a.center_index},
                        {"r", a.r},
                        {"R", a.R},
                        {"m_mass", a.m_mass},
                        {"nu_doubled", a.nu_doubled}});
    }
    return j;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_text: cannot open " + path.string());
    f << text;
}

/// Minimal polyline line chart. Each series is drawn in its own color with
/// a legend entry; axes carry min/max tick labels only.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string xlabel, std::string ylabel)
        : title_(std::move(title)), xlabel_(std::move(xlabel)), ylabel_(std::move(ylabel)) {}

    void add_series(std::string label, std::vector<double> x, std::vector<double> y) {
        if (x.size() != y.size() || x.empty())
            throw std::invalid_argument("SvgPlot: series size mismatch or empty");
        series_.push_back({std::move(label), std::move(x), std::move(y)});
    }

    std::string render() const {
        if (series_.empty()) throw std::invalid_argument("SvgPlot: no series");
        const int W = 720, H = 440, L = 80, R = 24, T = 44, B = 56;
        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
        for (const auto& s : series_) {
            for (double v : s.x) { xmin = std::min(xmin, v); xmax = std::max(xmax, v); }
            for (double v : s.y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
        }
        if (xmax <= xmin) xmax = xmin + 1.0;
        if (ymax <= ymin) ymax = ymin + 1.0;
        double ypad = 0.05 * (ymax - ymin);
        ymin -= ypad;
        ymax += ypad;
        auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
        auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };
        static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                       "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
        std::string svg;
        svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) +
               "\" height=\"" + std::to_string(H) + "\">\n";
        svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
        svg += "<text x=\"" + std::to_string(W / 2) + "\" y=\"24\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\" font-size=\"16\">" + title_ + "</text>\n";
        // axes
        svg += axis_line(L, H - B, W - R, H - B) + axis_line(L, T, L, H - B);
        svg += tick_text(px(xmin), H - B + 18, format_number(xmin, 4), "middle");
        svg += tick_text(px(xmax), H - B + 18, format_number(xmax, 4), "middle");
        svg += tick_text(L - 6, py(ymin) + 4, format_number(ymin, 4), "end");
        svg += tick_text(L - 6, py(ymax) + 4, format_number(ymax, 4), "end");
        svg += "<text x=\"" + std::to_string((L + W - R) / 2) + "\" y=\"" +
               std::to_string(H - 14) + "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
               "font-size=\"13\">" + xlabel_ + "</text>\n";
        svg += "<text x=\"18\" y=\"" + std::to_string((T + H - B) / 2) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
               "transform=\"rotate(-90 18 " + std::to_string((T + H - B) / 2) + ")\">" + ylabel_ +
               "</text>\n";
        for (size_t s = 0; s < series_.size(); ++s) {
            std::string pts;
            for (size_t i = 0; i < series_[s].x.size(); ++i)
                pts += format_number(px(series_[s].x[i]), 7) + "," +
                       format_number(py(series_[s].y[i]), 7) + " ";
            svg += "<polyline fill=\"none\" stroke=\"" + std::string(colors[s % 8]) +
                   "\" stroke-width=\"1.6\" points=\"" + pts + "\"/>\n";
            svg += "<text x=\"" + std::to_string(L + 10) + "\" y=\"" +
                   std::to_string(T + 16 + 16 * (int)s) + "\" font-family=\"sans-serif\" "
                   "font-size=\"12\" fill=\"" + colors[s % 8] + "\">" + series_[s].label +
                   "</text>\n";
        }
        svg += "</svg>\n";
        return svg;
    }

    void write(const std::filesystem::path& path) const { write_text(path, render()); }

private:
    struct Series {
        std::string label;
        std::vector<double> x, y;
    };
    static std::string axis_line(int x1, int y1, int x2, int y2) {
        return "<line x1=\"" + std::to_string(x1) + "\" y1=\"" + std::to_string(y1) + "\" x2=\"" +
               std::to_string(x2) + "\" y2=\"" + std::to_string(y2) +
               "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    }
    static std::string tick_text(double x, double y, const std::string& s,
                                 const std::string& anchor) {
        return "<text x=\"" + format_number(x, 7) + "\" y=\"" + format_number(y, 7) +
               "\" text-anchor=\"" + anchor + "\" font-family=\"sans-serif\" font-size=\"11\">" +
               s + "</text>\n";
    }
    std::string title_, xlabel_, ylabel_;
    std::vector<Series> series_;
};

}  // namespace confspec
