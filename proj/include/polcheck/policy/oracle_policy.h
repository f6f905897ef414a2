#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "polcheck/policy/policy.h"

namespace polcheck::policy {

/// Policy answered by a child process over a JSON-lines protocol on its
/// standard input/output:
///   request:  {"id": 7, "state": {"x": 1}, "enabled": ["UP","NOP","DOWN"]}
///   response: {"id": 7, "dist": {"UP": 0.3, "DOWN": 0.7}}
/// One request is in flight at a time. Responses are cached per state.
/// A timeout, EOF, id mismatch or malformed reply raises OracleFailure.
class OraclePolicy final : public StochasticPolicy {
public:
    OraclePolicy(const std::string& command, std::vector<std::string> variable_names,
                 std::chrono::milliseconds timeout = std::chrono::seconds(10));
    ~OraclePolicy() override;

    OraclePolicy(const OraclePolicy&) = delete;
    OraclePolicy& operator=(const OraclePolicy&) = delete;

    ActionDistribution query(const model::FactoredState& state, std::span<const std::string> enabled) override;

    std::uint64_t requests_sent() const { return next_id_; }

private:
    std::string read_line();
    void shutdown();

    std::vector<std::string> variable_names_;
    std::chrono::milliseconds timeout_;
    int pid_ = -1;
    int to_child_ = -1;
    int from_child_ = -1;
    std::string buffer_;
    std::uint64_t next_id_ = 0;
    bool broken_ = false;
    std::unordered_map<model::FactoredState, ActionDistribution> cache_;
};

}  // namespace polcheck::policy
