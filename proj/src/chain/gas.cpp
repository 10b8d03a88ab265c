// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "chain/gas.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "common/error.hpp"

namespace rlab::chain {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

}  // namespace

Gas GasSchedule::cost(OpKind kind) const {
    switch (kind) {
        case OpKind::kIntrinsic:
            return intrinsic;
        case OpKind::kCallBase:
            return call_base;
        case OpKind::kStorageWrite:
            return storage_write;
        case OpKind::kArith:
            return arith;
    }
    return 0;
}

GasSchedule GasSchedule::parse(std::string_view text) {
    GasSchedule out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);

        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::kMalformedInput, "gas schedule line " + std::to_string(line_no) + ": expected key = value");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value_text = trim(line.substr(eq + 1));
        Gas value = 0;
        const auto [ptr, ec] = std::from_chars(value_text.data(), value_text.data() + value_text.size(), value);
        if (ec != std::errc{} || ptr != value_text.data() + value_text.size()) {
            throw Error(ErrorCode::kMalformedInput, "gas schedule line " + std::to_string(line_no) + ": bad cost");
        }

        if (key == "intrinsic") {
            out.intrinsic = value;
        } else if (key == "call_base") {
            out.call_base = value;
        } else if (key == "sstore") {
            out.storage_write = value;
        } else if (key == "arith") {
            out.arith = value;
        } else {
            throw Error(ErrorCode::kMalformedInput, "gas schedule: unknown instruction kind '" + std::string(key) + "'");
        }
    }
    return out;
}

GasSchedule GasSchedule::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kIo, "cannot read gas schedule " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string GasSchedule::to_config() const {
    std::ostringstream out;
    out << "intrinsic = " << intrinsic << "\n"
        << "call_base = " << call_base << "\n"
        << "sstore = " << storage_write << "\n"
        << "arith = " << arith << "\n";
    return out.str();
}

}  // namespace rlab::chain
