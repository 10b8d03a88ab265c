// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "common/wei.hpp"

#include <algorithm>
#include <limits>

#include "common/error.hpp"

namespace rlab {

namespace {
constexpr uint128 kMax = ~uint128{0};
constexpr uint128 kInt128Max = kMax >> 1;
}  // namespace

Wei& Wei::operator+=(Wei other) {
    if (kMax - amount_ < other.amount_) {
        throw Error(ErrorCode::kBalanceOverflow, "wei addition overflows");
    }
    amount_ += other.amount_;
    return *this;
}

Wei& Wei::operator-=(Wei other) {
    if (amount_ < other.amount_) {
        throw Error(ErrorCode::kBalanceOverflow, "wei subtraction underflows");
    }
    amount_ -= other.amount_;
    return *this;
}

Wei Wei::times(std::uint64_t factor) const {
    if (factor != 0 && amount_ > kMax / factor) {
        throw Error(ErrorCode::kBalanceOverflow, "wei multiplication overflows");
    }
    return Wei(amount_ * factor);
}

int128 difference(Wei after, Wei before) {
    if (after.value() > kInt128Max || before.value() > kInt128Max) {
        throw Error(ErrorCode::kBalanceOverflow, "balance too large for a signed difference");
    }
    return static_cast<int128>(after.value()) - static_cast<int128>(before.value());
}

std::string to_string(uint128 v) {
    if (v == 0) return "0";
    std::string out;
    while (v != 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

std::string to_string(int128 v) {
    if (v >= 0) return to_string(static_cast<uint128>(v));
    // -v overflows for the minimum value; go through the unsigned complement
    const uint128 magnitude = ~static_cast<uint128>(v) + 1;
    return "-" + to_string(magnitude);
}

uint128 parse_uint128(std::string_view text) {
    if (text.empty()) throw Error(ErrorCode::kMalformedInput, "empty integer");
    uint128 v = 0;
    for (char c : text) {
        if (c < '0' || c > '9') {
            throw Error(ErrorCode::kMalformedInput, "invalid digit in integer: " + std::string(text));
        }
        const auto digit = static_cast<unsigned>(c - '0');
        if (v > (kMax - digit) / 10) {
            throw Error(ErrorCode::kMalformedInput, "integer out of range: " + std::string(text));
        }
        v = v * 10 + digit;
    }
    return v;
}

int128 parse_int128(std::string_view text) {
    const bool negative = !text.empty() && text.front() == '-';
    const uint128 magnitude = parse_uint128(negative ? text.substr(1) : text);
    if (magnitude > kInt128Max + (negative ? 1 : 0)) {
        throw Error(ErrorCode::kMalformedInput, "integer out of range: " + std::string(text));
    }
    if (negative) return static_cast<int128>(~magnitude + 1);
    return static_cast<int128>(magnitude);
}

}  // namespace rlab
