// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "chain/address.hpp"

#include <algorithm>

#include "common/digest.hpp"
#include "common/error.hpp"

namespace rlab::chain {

namespace {

int hex_value(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

std::string Address::hex() const { return "0x" + to_hex(bytes); }

Address Address::from_hex(std::string_view text) {
    if (text.starts_with("0x") || text.starts_with("0X")) text.remove_prefix(2);
    if (text.size() != 40) {
        throw Error(ErrorCode::kMalformedInput, "address must have 40 hex digits: " + std::string(text));
    }
    Address out;
    for (std::size_t i = 0; i < 20; ++i) {
        const int hi = hex_value(text[2 * i]);
        const int lo = hex_value(text[2 * i + 1]);
        if (hi < 0 || lo < 0) throw Error(ErrorCode::kMalformedInput, "invalid hex in address: " + std::string(text));
        out.bytes[i] = static_cast<std::uint8_t>(hi * 16 + lo);
    }
    return out;
}

Address Address::derive(std::uint64_t chain_salt, std::uint64_t nonce) {
    const Hash32 digest = DigestInput{}.add("account").add(chain_salt).add(nonce).finish();
    Address out;
    std::copy_n(digest.begin() + 12, 20, out.bytes.begin());
    return out;
}

}  // namespace rlab::chain
