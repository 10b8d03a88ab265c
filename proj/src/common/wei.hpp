// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace rlab {

__extension__ typedef unsigned __int128 uint128;
__extension__ typedef __int128 int128;

/// Amount of ether in its base unit. All arithmetic is checked and throws
/// ErrorCode::kBalanceOverflow instead of wrapping.
class Wei {
  public:
    static constexpr uint128 kPerEther = 1'000'000'000'000'000'000ULL;

    constexpr Wei() = default;
    constexpr explicit Wei(uint128 amount) : amount_(amount) {}

    static constexpr Wei ether(std::uint64_t n) { return Wei(uint128(n) * kPerEther); }

    constexpr uint128 value() const { return amount_; }
    constexpr bool is_zero() const { return amount_ == 0; }

    Wei& operator+=(Wei other);
    Wei& operator-=(Wei other);
    friend Wei operator+(Wei a, Wei b) { return a += b; }
    friend Wei operator-(Wei a, Wei b) { return a -= b; }
    Wei times(std::uint64_t factor) const;

    friend constexpr auto operator<=>(Wei, Wei) = default;

  private:
    uint128 amount_ = 0;
};

/// Signed after - before.
int128 difference(Wei after, Wei before);

std::string to_string(uint128 v);
std::string to_string(int128 v);
inline std::string to_string(Wei w) { return to_string(w.value()); }

/// Decimal only. Throws ErrorCode::kMalformedInput.
uint128 parse_uint128(std::string_view text);
int128 parse_int128(std::string_view text);
inline Wei parse_wei(std::string_view text) { return Wei(parse_uint128(text)); }

}  // namespace rlab
