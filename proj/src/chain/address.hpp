// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace rlab::chain {

struct Address {
    std::array<std::uint8_t, 20> bytes{};

    /// Lowercase 0x-prefixed, 40 hex digits.
    std::string hex() const;

    /// Accepts 40 hex digits with or without 0x. Throws kMalformedInput.
    static Address from_hex(std::string_view text);

    /// Deterministic account address for the n-th account of a chain.
    static Address derive(std::uint64_t chain_salt, std::uint64_t nonce);

    friend auto operator<=>(const Address&, const Address&) = default;
};

using Gas = std::uint64_t;

}  // namespace rlab::chain

template <>
struct std::hash<rlab::chain::Address> {
    std::size_t operator()(const rlab::chain::Address& a) const noexcept {
        std::size_t h = 0;
        for (auto b : a.bytes) h = h * 131 + b;
        return h;
    }
};
