// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chain/address.hpp"

namespace rlab::chain {

/// Transaction receipt as exposed by a node's JSON-RPC interface.
struct Receipt {
    std::string block_hash;
    std::uint64_t block_number = 0;
    std::optional<Address> contract_address;
    Gas cumulative_gas_used = 0;
    Address from;
    Gas gas_used = 0;
    std::vector<std::string> logs;
    std::string logs_bloom;
    std::string status = "0x1";
    Address to;
    std::string transaction_hash;
    std::uint64_t transaction_index = 0;

    friend bool operator==(const Receipt&, const Receipt&) = default;
};

/// 256-byte all-zero bloom, hex encoded.
const std::string& empty_logs_bloom();

/// JSON object with the wire field names in wire order:
/// blockHash, blockNumber, contractAddress, cumulativeGasUsed, from, gasUsed,
/// logs, logsBloom, status, to, transactionHash, transactionIndex.
std::string to_json(const Receipt& r, int indent = 2);

/// Inverse of to_json. Throws kMalformedInput on missing or mistyped fields.
Receipt parse_receipt(std::string_view json_text);

}  // namespace rlab::chain
