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

#include "iasim/scenario.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "iasim/errors.hpp"

namespace iasim {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos)
            break;
        start = pos + 1;
    }
    return out;
}

[[noreturn]] void parse_fail(int line, const std::string& message) {
    throw Error(ErrorCode::ParseError, "scenario line " + std::to_string(line) + ": " + message);
}

double parse_double(const std::string& text, int line) {
    if (text.empty())
        parse_fail(line, "expected a number");
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size() || errno == ERANGE || std::isnan(v))
        parse_fail(line, "invalid number '" + text + "'");
    return v;
}

long long parse_integer(const std::string& text, int line) {
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(text.c_str(), &end, 10);
    if (text.empty() || end != text.c_str() + text.size() || errno == ERANGE)
        parse_fail(line, "invalid integer '" + text + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& text, int line) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(text.c_str(), &end, 0);
    if (text.empty() || text[0] == '-' || end != text.c_str() + text.size() || errno == ERANGE)
        parse_fail(line, "invalid unsigned integer '" + text + "'");
    return v;
}

std::vector<int> parse_int_list(const std::string& text, int line) {
    std::vector<int> out;
    for (const auto& item : split(text, ','))
        out.push_back(static_cast<int>(parse_integer(item, line)));
    return out;
}

std::vector<double> parse_grid(const std::string& text, int line) {
    if (text.empty())
        return {};
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3)
            parse_fail(line, "range must be start:step:stop");
        const double start = parse_double(parts[0], line);
        const double step = parse_double(parts[1], line);
        const double stop = parse_double(parts[2], line);
        if (!(step > 0.0) || stop < start)
            parse_fail(line, "range needs step > 0 and stop >= start");
        std::vector<double> out;
        for (int i = 0;; ++i) {
            const double v = start + i * step;
            if (v > stop + 1e-9 * std::max(1.0, std::abs(stop)))
                break;
            out.push_back(v);
        }
        return out;
    }
    std::vector<double> out;
    for (const auto& item : split(text, ','))
        out.push_back(parse_double(item, line));
    return out;
}

std::string fmt_double(double v) {
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string join_ints(const std::vector<int>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? ", " : "") + std::to_string(v[i]);
    return out;
}

std::vector<int> broadcast(std::vector<int> values, int K, int line, const char* key) {
    if (values.size() == 1)
        values.assign(static_cast<std::size_t>(K), values.front());
    if (values.size() != static_cast<std::size_t>(K))
        parse_fail(line, std::string(key) + " needs 1 or K values");
    return values;
}

} // namespace

std::string_view receiver_name(Receiver r) noexcept {
    return r == Receiver::PerfectIa ? "perfect_ia" : "mmse";
}

std::string_view error_norm_name(ErrorNorm e) noexcept {
    return e == ErrorNorm::Unit ? "unit" : "per_entry";
}

std::string_view csit_model_name(CsitModel m) noexcept {
    return m == CsitModel::Gaussian ? "gaussian" : "rvq";
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

void Scenario::validate() const {
    dims.validate();
    require(trials >= 1, ErrorCode::InvalidArgument, "scenario: trials must be >= 1");
    for (std::size_t i = 1; i < snr_grid_db.size(); ++i)
        require(snr_grid_db[i] > snr_grid_db[i - 1], ErrorCode::InvalidArgument, "scenario: snr_grid_db must be strictly increasing");
    for (double db : snr_grid_db)
        require(std::isfinite(db) && db >= 0.0, ErrorCode::InvalidArgument, "scenario: SNR points must be finite and >= 0 dB");
    require(dof_window >= 2, ErrorCode::InvalidArgument, "scenario: dof_window must be >= 2");
    if (filter_eps)
        require(*filter_eps >= 0.0 && std::isfinite(*filter_eps), ErrorCode::InvalidArgument, "scenario: filter_eps must be >= 0");
    if (csit) {
        csit->validate();
        require(csit->K == dims.K, ErrorCode::InvalidArgument, "scenario: CSIT profile size does not match K");
    }
}

std::string Scenario::to_text() const {
    std::ostringstream out;
    out << "name = " << name << "\n";
    out << "K = " << dims.K << "\n";
    out << "M = " << join_ints(dims.M) << "\n";
    out << "N = " << join_ints(dims.N) << "\n";
    out << "d = " << join_ints(dims.d) << "\n";
    out << "snr_grid_db = ";
    for (std::size_t i = 0; i < snr_grid_db.size(); ++i)
        out << (i ? ", " : "") << fmt_double(snr_grid_db[i]);
    out << "\n";
    out << "trials = " << trials << "\n";
    out << "seed = " << seed << "\n";
    out << "receiver = " << receiver_name(receiver) << "\n";
    out << "error_norm = " << error_norm_name(error_norm) << "\n";
    out << "filter_eps = " << (filter_eps ? fmt_double(*filter_eps) : std::string("none")) << "\n";
    out << "dof_window = " << dof_window << "\n";
    if (!csit) {
        out << "csit = perfect\n";
    } else {
        out << "csit = " << csit_model_name(csit->model) << "\n";
        out << "csit.C = " << fmt_double(csit->C) << "\n";
        out << "csit.b_max = " << csit->b_max << "\n";
        for (int i = 0; i < csit->K; ++i)
            for (int k = 0; k < csit->K; ++k)
                for (int j = 0; j < csit->K; ++j)
                    out << "A." << i + 1 << "." << k + 1 << "." << j + 1 << " = " << fmt_double(csit->at(i, k, j)) << "\n";
    }
    return out.str();
}

std::uint64_t Scenario::hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : to_text()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Scenario parse_scenario(std::string_view text) {
    Scenario s;
    s.snr_grid_db.clear();

    struct Pending {
        std::string value;
        int line;
    };
    std::map<std::string, Pending> entries;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (content.empty())
            continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos)
            parse_fail(line, "expected 'key = value'");
        const std::string key = trim(content.substr(0, eq));
        const std::string value = trim(content.substr(eq + 1));
        if (key.empty())
            parse_fail(line, "empty key");
        if (!entries.emplace(key, Pending{value, line}).second)
            parse_fail(line, "duplicate key '" + key + "'");
    }

    auto take = [&](const std::string& key) -> std::optional<Pending> {
        auto it = entries.find(key);
        if (it == entries.end())
            return std::nullopt;
        Pending p = it->second;
        entries.erase(it);
        return p;
    };

    if (auto v = take("name"))
        s.name = v->value;
    if (auto v = take("K"))
        s.dims.K = static_cast<int>(parse_integer(v->value, v->line));
    const int K = s.dims.K;
    if (K < 1 || K > 64)
        parse_fail(0, "K must be in 1..64");
    s.dims = Dims::square(K, 4, 2);
    if (auto v = take("M"))
        s.dims.M = broadcast(parse_int_list(v->value, v->line), K, v->line, "M");
    if (auto v = take("N"))
        s.dims.N = broadcast(parse_int_list(v->value, v->line), K, v->line, "N");
    if (auto v = take("d"))
        s.dims.d = broadcast(parse_int_list(v->value, v->line), K, v->line, "d");
    if (auto v = take("snr_grid_db"))
        s.snr_grid_db = parse_grid(v->value, v->line);
    if (auto v = take("trials"))
        s.trials = static_cast<int>(parse_integer(v->value, v->line));
    if (auto v = take("seed"))
        s.seed = parse_u64(v->value, v->line);
    if (auto v = take("receiver")) {
        if (v->value == "perfect_ia")
            s.receiver = Receiver::PerfectIa;
        else if (v->value == "mmse")
            s.receiver = Receiver::Mmse;
        else
            parse_fail(v->line, "receiver must be perfect_ia or mmse");
    }
    if (auto v = take("error_norm")) {
        if (v->value == "unit")
            s.error_norm = ErrorNorm::Unit;
        else if (v->value == "per_entry")
            s.error_norm = ErrorNorm::PerEntry;
        else
            parse_fail(v->line, "error_norm must be unit or per_entry");
    }
    if (auto v = take("filter_eps")) {
        if (v->value != "none")
            s.filter_eps = parse_double(v->value, v->line);
    }
    if (auto v = take("dof_window"))
        s.dof_window = static_cast<int>(parse_integer(v->value, v->line));

    std::string model = "perfect";
    int model_line = 0;
    if (auto v = take("csit")) {
        model = v->value;
        model_line = v->line;
    }
    if (model == "perfect") {
        for (const auto& [key, pending] : entries)
            if (key.rfind("A.", 0) == 0 || key.rfind("csit.", 0) == 0)
                parse_fail(pending.line, "'" + key + "' given but csit = perfect");
    } else {
        CsitModel m{};
        if (model == "gaussian")
            m = CsitModel::Gaussian;
        else if (model == "rvq")
            m = CsitModel::Rvq;
        else
            parse_fail(model_line, "csit must be perfect, gaussian or rvq");
        double fallback = 1.0;
        if (auto v = take("A.default"))
            fallback = parse_double(v->value, v->line);
        CsitProfile profile = CsitProfile::uniform(K, fallback, m);
        profile.error_norm = s.error_norm;
        if (auto v = take("csit.C"))
            profile.C = parse_double(v->value, v->line);
        if (auto v = take("csit.b_max"))
            profile.b_max = static_cast<int>(parse_integer(v->value, v->line));
        std::set<std::string> seen;
        for (auto it = entries.begin(); it != entries.end();) {
            if (it->first.rfind("A.", 0) != 0) {
                ++it;
                continue;
            }
            const auto parts = split(it->first, '.');
            if (parts.size() != 4)
                parse_fail(it->second.line, "expected A.i.k.j");
            const int i = static_cast<int>(parse_integer(parts[1], it->second.line));
            const int k = static_cast<int>(parse_integer(parts[2], it->second.line));
            const int j = static_cast<int>(parse_integer(parts[3], it->second.line));
            if (i < 1 || i > K || k < 1 || k > K || j < 1 || j > K)
                parse_fail(it->second.line, "A index out of range 1..K");
            const std::string canonical = std::to_string(i) + "." + std::to_string(k) + "." + std::to_string(j);
            if (!seen.insert(canonical).second)
                parse_fail(it->second.line, "duplicate entry A." + canonical);
            profile.at(i - 1, k - 1, j - 1) = parse_double(it->second.value, it->second.line);
            it = entries.erase(it);
        }
        s.csit = profile;
    }

    if (!entries.empty()) {
        const auto& [key, pending] = *entries.begin();
        parse_fail(pending.line, "unknown key '" + key + "'");
    }
    try {
        s.validate();
    } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::Io, "cannot open scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

Scenario golden_scenario() {
    Scenario s;
    s.name = "golden";
    s.dims = Dims::square(3, 4, 2);
    s.snr_grid_db = {0, 10, 20, 30, 40, 50, 60};
    s.trials = 2000;
    s.seed = 20130601;
    return s;
}

CsitProfile single_weak_link_profile() {
    CsitProfile p = CsitProfile::uniform(3, 1.0, CsitModel::Gaussian);
    p.at(2, 1, 1) = 0.5; // A_{3,2}^{(2)}
    p.at(2, 1, 2) = 0.0; // A_{3,2}^{(3)}
    return p;
}

} // namespace iasim
