#pragma once

#include <stdexcept>
#include <string>

namespace polcheck {

/// Base of every exception thrown by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An error carrying a module-specific kind enum, so callers and tests can
/// dispatch on the failure category without parsing the message.
template <typename KindT>
class KindedError : public Error {
public:
    KindedError(KindT kind, const std::string& what) : Error(what), kind_(kind) {}

    KindT kind() const noexcept { return kind_; }

private:
    KindT kind_;
};

}  // namespace polcheck
