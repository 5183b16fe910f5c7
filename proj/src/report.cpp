// SPDX-License-Identifier: Apache-2.0
//
// iasim: closed-form interference alignment under distributed CSIT
// Copyright (C) 2026 The iasim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "iasim/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "iasim/errors.hpp"

namespace iasim {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr int kTicks = 6;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    if (std::abs(v) < 1e-12)
        v = 0.0;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Range {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        if (!std::isfinite(v))
            return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void settle() {
        if (!(lo <= hi)) {
            lo = 0.0;
            hi = 1.0;
        } else if (hi - lo < 1e-12) {
            lo -= 0.5;
            hi += 0.5;
        }
    }
};

} // namespace

std::string format_number(double value) {
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string format_csv(const SweepResult& result) {
    std::string out = "snr_db,user,mean_rate,stderr,degenerate_fraction\n";
    for (std::size_t p = 0; p < result.points.size(); ++p) {
        const RatePoint& pt = result.points[p];
        const double deg = p < result.degenerate_fraction.size() ? result.degenerate_fraction[p] : 0.0;
        for (std::size_t u = 0; u < pt.per_user_rate.size(); ++u) {
            out += format_number(pt.snr_db) + ',' + std::to_string(u + 1) + ',' + format_number(pt.per_user_rate[u]) + ',' +
                   format_number(pt.per_user_stderr[u]) + ',' + format_number(deg) + '\n';
        }
    }
    return out;
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
    write_text_file(path, format_csv(result));
}

std::string format_quantizer_csv(const QuantizerStudy& study) {
    std::string out = "bits,mean_distortion_sq,stderr,trials\n";
    for (const auto& r : study.rows)
        out += std::to_string(r.bits) + ',' + format_number(r.distortion_sq.mean) + ',' +
               format_number(r.distortion_sq.std_error) + ',' + std::to_string(r.distortion_sq.count) + '\n';
    return out;
}

std::string format_scaling_csv(const ScalingStudy& study) {
    std::string out = "a_min,snr_db,frob_sq,frob_stderr,aligned_sq,aligned_stderr,chordal_sq,chordal_stderr,trials\n";
    for (const auto& row : study.rows) {
        for (std::size_t p = 0; p < row.P.size(); ++p) {
            out += format_number(row.a_min) + ',' + format_number(10.0 * std::log10(row.P[p])) + ',' +
                   format_number(row.frob_sq[p].mean) + ',' + format_number(row.frob_sq[p].std_error) + ',' +
                   format_number(row.aligned_sq[p].mean) + ',' + format_number(row.aligned_sq[p].std_error) + ',' +
                   format_number(row.chordal_sq[p].mean) + ',' + format_number(row.chordal_sq[p].std_error) + ',' +
                   std::to_string(row.frob_sq[p].count) + '\n';
        }
    }
    return out;
}

std::string render_chart(const Chart& chart) {
    Range xr, yr;
    for (const auto& s : chart.series) {
        for (double v : s.x)
            xr.add(v);
        for (double v : s.y)
            yr.add(v);
    }
    xr.settle();
    yr.settle();
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto map_x = [&](double v) { return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * plot_w; };
    auto map_y = [&](double v) { return kTop + (yr.hi - v) / (yr.hi - yr.lo) * plot_h; };

    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(kWidth) + "\" height=\"" + px(kHeight) +
           "\" viewBox=\"0 0 " + px(kWidth) + ' ' + px(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + px(kWidth) + "\" height=\"" + px(kHeight) + "\" fill=\"white\"/>\n";
    out += "<text x=\"" + px(kLeft + plot_w / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
           xml_escape(chart.title) + "</text>\n";

    out += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (int t = 0; t < kTicks; ++t) {
        const double f = static_cast<double>(t) / (kTicks - 1);
        const double gx = kLeft + f * plot_w;
        const double gy = kTop + f * plot_h;
        out += "<line x1=\"" + px(gx) + "\" y1=\"" + px(kTop) + "\" x2=\"" + px(gx) + "\" y2=\"" + px(kTop + plot_h) + "\"/>\n";
        out += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(gy) + "\" x2=\"" + px(kLeft + plot_w) + "\" y2=\"" + px(gy) + "\"/>\n";
    }
    out += "</g>\n";
    out += "<rect x=\"" + px(kLeft) + "\" y=\"" + px(kTop) + "\" width=\"" + px(plot_w) + "\" height=\"" + px(plot_h) +
           "\" fill=\"none\" stroke=\"black\"/>\n";

    out += "<g fill=\"black\">\n";
    for (int t = 0; t < kTicks; ++t) {
        const double f = static_cast<double>(t) / (kTicks - 1);
        out += "<text x=\"" + px(kLeft + f * plot_w) + "\" y=\"" + px(kTop + plot_h + 18) + "\" text-anchor=\"middle\">" +
               tick_label(xr.lo + f * (xr.hi - xr.lo)) + "</text>\n";
        out += "<text x=\"" + px(kLeft - 6) + "\" y=\"" + px(kTop + plot_h - f * plot_h + 4) + "\" text-anchor=\"end\">" +
               tick_label(yr.lo + f * (yr.hi - yr.lo)) + "</text>\n";
    }
    out += "<text x=\"" + px(kLeft + plot_w / 2) + "\" y=\"" + px(kHeight - 16) + "\" text-anchor=\"middle\">" +
           xml_escape(chart.x_label) + "</text>\n";
    out += "<text x=\"18\" y=\"" + px(kTop + plot_h / 2) + "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " +
           px(kTop + plot_h / 2) + ")\">" + xml_escape(chart.y_label) + "</text>\n";
    out += "</g>\n";

    for (std::size_t s = 0; s < chart.series.size(); ++s) {
        const Series& series = chart.series[s];
        const char* color = kPalette[s % std::size(kPalette)];
        std::string pts;
        const std::size_t n = std::min(series.x.size(), series.y.size());
        for (std::size_t k = 0; k < n; ++k) {
            if (!std::isfinite(series.x[k]) || !std::isfinite(series.y[k]))
                continue;
            if (!pts.empty())
                pts += ' ';
            pts += px(map_x(series.x[k])) + ',' + px(map_y(series.y[k]));
        }
        out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"2\" points=\"" + pts + "\"/>\n";
        const double ly = kTop + 12 + 20.0 * static_cast<double>(s);
        const double lx = kLeft + plot_w + 14;
        out += "<line x1=\"" + px(lx) + "\" y1=\"" + px(ly) + "\" x2=\"" + px(lx + 24) + "\" y2=\"" + px(ly) +
               "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + px(lx + 30) + "\" y=\"" + px(ly + 4) + "\">" + xml_escape(series.name) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

Chart rate_chart(const SweepResult& result, std::string_view title) {
    Chart chart{std::string(title), "SNR [dB]", "average rate [bits/channel use]", {}};
    const std::size_t users = result.points.empty() ? 0 : result.points.front().per_user_rate.size();
    for (std::size_t u = 0; u < users; ++u) {
        Series s{"user " + std::to_string(u + 1), {}, {}};
        for (const auto& p : result.points) {
            s.x.push_back(p.snr_db);
            s.y.push_back(p.per_user_rate[u]);
        }
        chart.series.push_back(std::move(s));
    }
    return chart;
}

Chart quantizer_chart(const QuantizerStudy& study) {
    Chart chart{"RVQ distortion, N=" + std::to_string(study.N) + " M=" + std::to_string(study.M), "bits B",
                "log2 E[distortion^2]", {}};
    Series s{"measured", {}, {}};
    for (const auto& r : study.rows) {
        s.x.push_back(r.bits);
        s.y.push_back(std::log2(r.distortion_sq.mean));
    }
    chart.series.push_back(std::move(s));
    return chart;
}

Chart scaling_chart(const ScalingStudy& study) {
    Chart chart{"Precoder error of TX 1", "log10 P", "log10 E[aligned error^2]", {}};
    for (const auto& row : study.rows) {
        Series s{"A = " + format_number(row.a_min), {}, {}};
        for (std::size_t p = 0; p < row.P.size(); ++p) {
            s.x.push_back(std::log10(row.P[p]));
            s.y.push_back(std::log10(row.aligned_sq[p].mean));
        }
        chart.series.push_back(std::move(s));
    }
    return chart;
}

std::string render_svg(const SweepResult& result, std::string_view title) {
    return render_chart(rate_chart(result, title));
}

void emit_svg(const SweepResult& result, const std::filesystem::path& path, std::string_view title) {
    write_text_file(path, render_svg(result, title));
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::Io, "cannot open " + path.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out)
        throw Error(ErrorCode::Io, "write failed: " + path.string());
}

} // namespace iasim
