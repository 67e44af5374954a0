#ifndef APFREE_ERROR_HPP
#define APFREE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace apfree {

enum class ErrorCode {
    invalid_argument,
    precondition,
    cap_exceeded,
    io,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace apfree

#endif
