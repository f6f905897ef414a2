#include "polcheck/model/state.h"

#include <sstream>

namespace polcheck::model {

std::vector<std::pair<std::string, Value>> FactoredState::features(std::span<const std::string> names) const {
    std::vector<std::pair<std::string, Value>> out;
    out.reserve(values_.size());
    for (std::size_t i = 0; i < values_.size(); ++i) {
        out.emplace_back(i < names.size() ? names[i] : "f" + std::to_string(i), values_[i]);
    }
    return out;
}

std::string FactoredState::to_string(std::span<const std::string> names) const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i > 0) os << ", ";
        if (i < names.size()) {
            os << names[i] << '=';
        }
        os << values_[i];
    }
    os << ')';
    return os.str();
}

}  // namespace polcheck::model
