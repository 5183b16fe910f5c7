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

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "iasim/sweep.hpp"

namespace iasim {

// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double value);

// Header `snr_db,user,mean_rate,stderr,degenerate_fraction`, then one row per
// (SNR, user) in grid order, users 1-based.
std::string format_csv(const SweepResult& result);
void emit_csv(const SweepResult& result, const std::filesystem::path& path);

std::string format_quantizer_csv(const QuantizerStudy& study);
std::string format_scaling_csv(const ScalingStudy& study);

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct Chart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
};

// Standalone SVG line chart: one polyline per series plus a legend.
std::string render_chart(const Chart& chart);

Chart rate_chart(const SweepResult& result, std::string_view title);
Chart quantizer_chart(const QuantizerStudy& study);
Chart scaling_chart(const ScalingStudy& study);

std::string render_svg(const SweepResult& result, std::string_view title = "Average rate per user");
void emit_svg(const SweepResult& result, const std::filesystem::path& path, std::string_view title = "Average rate per user");

// Writes the whole string or throws Error(Io).
void write_text_file(const std::filesystem::path& path, std::string_view contents);

} // namespace iasim
