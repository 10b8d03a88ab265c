// Copyright 2026 The rlab Authors
// SPDX-License-Identifier: Apache-2.0

#include "chain/receipt.hpp"

#include <json.hpp>

#include "common/error.hpp"

namespace rlab::chain {

const std::string& empty_logs_bloom() {
    static const std::string kBloom = "0x" + std::string(512, '0');
    return kBloom;
}

std::string to_json(const Receipt& r, int indent) {
    nlohmann::ordered_json j;
    j["blockHash"] = r.block_hash;
    j["blockNumber"] = r.block_number;
    j["contractAddress"] = r.contract_address ? nlohmann::ordered_json(r.contract_address->hex()) : nullptr;
    j["cumulativeGasUsed"] = r.cumulative_gas_used;
    j["from"] = r.from.hex();
    j["gasUsed"] = r.gas_used;
    j["logs"] = r.logs;
    j["logsBloom"] = r.logs_bloom;
    j["status"] = r.status;
    j["to"] = r.to.hex();
    j["transactionHash"] = r.transaction_hash;
    j["transactionIndex"] = r.transaction_index;
    return j.dump(indent);
}

Receipt parse_receipt(std::string_view json_text) {
    try {
        const auto j = nlohmann::json::parse(json_text);
        Receipt r;
        r.block_hash = j.at("blockHash").get<std::string>();
        r.block_number = j.at("blockNumber").get<std::uint64_t>();
        if (const auto& ca = j.at("contractAddress"); !ca.is_null()) r.contract_address = Address::from_hex(ca.get<std::string>());
        r.cumulative_gas_used = j.at("cumulativeGasUsed").get<Gas>();
        r.from = Address::from_hex(j.at("from").get<std::string>());
        r.gas_used = j.at("gasUsed").get<Gas>();
        r.logs = j.at("logs").get<std::vector<std::string>>();
        r.logs_bloom = j.at("logsBloom").get<std::string>();
        r.status = j.at("status").get<std::string>();
        r.to = Address::from_hex(j.at("to").get<std::string>());
        r.transaction_hash = j.at("transactionHash").get<std::string>();
        r.transaction_index = j.at("transactionIndex").get<std::uint64_t>();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kMalformedInput, std::string("receipt: ") + e.what());
    }
}

}  // namespace rlab::chain
