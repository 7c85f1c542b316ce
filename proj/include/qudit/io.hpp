// io.hpp: Deterministic CSV tables and a minimal SVG line plot.
//
// Numbers go through snprintf("%.12e"); identical inputs give identical bytes.

#pragma once

#include "qudit/errors.hpp"
#include "qudit/inout.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace qudit::io {

inline std::string num(double x) {
    if (x == 0.0) x = 0.0;   // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12e", x);
    return buf;
}

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> cells) {
        if (cells.size() != header_.size()) throw std::invalid_argument("CsvTable: row width differs from header");
        rows_.push_back(std::move(cells));
    }

    std::size_t rows() const noexcept { return rows_.size(); }
    const std::vector<std::string>& header() const noexcept { return header_; }

    std::string str() const {
        std::string out;
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t k = 0; k < cells.size(); ++k) {
                if (k) out += ',';
                out += cells[k];
            }
            out += '\n';
        };
        line(header_);
        for (const auto& r : rows_) line(r);
        return out;
    }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << text;
    f.flush();
    if (!f) throw IoError("write to '" + path + "' failed");
}

inline void write_csv(const std::string& path, const CsvTable& t) { write_text(path, t.str()); }

// One block of rows per traced state; state_index -1 marks a mixed preparation.
inline CsvTable trace_table(const std::vector<std::pair<int, TransmissionTrace>>& traces) {
    CsvTable t({"omega_ghz", "re_t", "im_t", "abs_t", "phase_rad", "state_index"});
    for (const auto& [state, tr] : traces)
        for (std::size_t k = 0; k < tr.size(); ++k)
            t.add_row({num(tr.omega[k]), num(tr.t[k].real()), num(tr.t[k].imag()), num(tr.abs_t[k]),
                       num(tr.phase[k]), std::to_string(state)});
    return t;
}

inline CsvTable shift_csv(const ShiftTable& s) {
    CsvTable t({"state_index", "re_shift_ghz", "im_shift_ghz"});
    for (std::size_t k = 0; k < s.shifts.size(); ++k)
        t.add_row({std::to_string(k), num(s.shifts[k].real()), num(s.shifts[k].imag())});
    return t;
}

inline CsvTable sweep_csv(const FieldSweep& sw, const std::vector<int>& labels) {
    CsvTable t({"b_t", "state_index", "abs_t"});
    for (std::size_t j = 0; j < sw.abs_t.size(); ++j)
        for (std::size_t k = 0; k < sw.b.size(); ++k)
            t.add_row({num(sw.b[k]), std::to_string(j < labels.size() ? labels[j] : static_cast<int>(j)),
                       num(sw.abs_t[j][k])});
    return t;
}

// ---------------------------------------------------------------------------
// SVG

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

inline std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

inline std::string svg_plot(const std::vector<Series>& series, const std::string& title, const std::string& xlabel,
                            const std::string& ylabel) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};
    const double W = 720, H = 480, L = 80, R = 160, T = 40, B = 60;
    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& s : series)
        for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
            if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
            x0 = std::min(x0, s.x[k]);
            x1 = std::max(x1, s.x[k]);
            y0 = std::min(y0, s.y[k]);
            y1 = std::max(y1, s.y[k]);
        }
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 == x0) x1 = x0 + 1;
    if (y1 == y0) y1 = y0 + 1;
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    o << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    o << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
      << "\" fill=\"none\" stroke=\"black\"/>\n";
    o << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << escape_xml(title)
      << "</text>\n";
    o << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 15 << "\" text-anchor=\"middle\" font-size=\"13\">"
      << escape_xml(xlabel) << "</text>\n";
    o << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << (T + H - B) / 2 << ")\">" << escape_xml(ylabel) << "</text>\n";
    for (int k = 0; k <= 4; ++k) {
        const double xv = x0 + (x1 - x0) * k / 4.0, yv = y0 + (y1 - y0) * k / 4.0;
        char bx[32], by[32];
        std::snprintf(bx, sizeof bx, "%.6g", xv);
        std::snprintf(by, sizeof by, "%.4g", yv);
        o << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 18 << "\" text-anchor=\"middle\" font-size=\"11\">" << bx
          << "</text>\n";
        o << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\" font-size=\"11\">" << by
          << "</text>\n";
    }
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* col = palette[s % (sizeof palette / sizeof *palette)];
        o << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t k = 0; k < series[s].x.size() && k < series[s].y.size(); ++k) {
            if (!std::isfinite(series[s].x[k]) || !std::isfinite(series[s].y[k])) continue;
            char pt[64];
            std::snprintf(pt, sizeof pt, "%.2f,%.2f ", px(series[s].x[k]), py(series[s].y[k]));
            o << pt;
        }
        o << "\"/>\n";
        const double ly = T + 16 + 18.0 * static_cast<double>(s);
        o << "<line x1=\"" << W - R + 12 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 36 << "\" y2=\"" << ly
          << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
        o << "<text x=\"" << W - R + 42 << "\" y=\"" << ly + 4 << "\" font-size=\"12\">" << escape_xml(series[s].label)
          << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

inline void write_svg(const std::string& path, const std::vector<Series>& series, const std::string& title,
                      const std::string& xlabel, const std::string& ylabel) {
    write_text(path, svg_plot(series, title, xlabel, ylabel));
}

} // namespace qudit::io
