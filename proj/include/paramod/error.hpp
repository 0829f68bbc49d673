#pragma once

#include <stdexcept>
#include <string>

namespace paramod {

/// Failure classes; the CLI maps them to exit codes 2, 3 and 4.
enum class ErrorKind { schema, precondition, internal };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_schema(const std::string& msg) {
    throw Error(ErrorKind::schema, msg);
}

[[noreturn]] inline void fail_precondition(const std::string& msg) {
    throw Error(ErrorKind::precondition, msg);
}

[[noreturn]] inline void fail_internal(const std::string& msg) {
    throw Error(ErrorKind::internal, msg);
}

} // namespace paramod
