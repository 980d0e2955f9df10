#pragma once

#include <stdexcept>
#include <string>

namespace assouad {

// Thrown when two scalars (or objects built from them) with different
// numeric backends meet in one expression.  Never coerced silently.
class backend_mismatch : public std::logic_error {
public:
    explicit backend_mismatch(const std::string& what) : std::logic_error(what) {}
};

// Domain/precondition violations (ratio out of range, bad word index, ...).
class domain_error : public std::invalid_argument {
public:
    explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// Spec-file parse errors; carries field context in the message.
class spec_error : public std::runtime_error {
public:
    explicit spec_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace assouad
