#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace polcheck::model {

using StateIndex = std::uint32_t;
using Value = std::int64_t;

/// A factored state: one integer feature per model variable, in the model's
/// variable declaration order. Names live with the model, not the state.
class FactoredState {
public:
    FactoredState() = default;
    explicit FactoredState(std::vector<Value> values) : values_(std::move(values)) {}

    std::span<const Value> values() const { return values_; }
    Value operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }

    /// (name, value) pairs; `names` must have one entry per feature.
    std::vector<std::pair<std::string, Value>> features(std::span<const std::string> names) const;

    /// "(x=1, y=2)" style rendering.
    std::string to_string(std::span<const std::string> names) const;

    bool operator==(const FactoredState&) const = default;
    auto operator<=>(const FactoredState&) const = default;

private:
    std::vector<Value> values_;
};

}  // namespace polcheck::model

template <>
struct std::hash<polcheck::model::FactoredState> {
    std::size_t operator()(const polcheck::model::FactoredState& s) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (auto v : s.values()) {
            h ^= std::hash<polcheck::model::Value>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }
};
