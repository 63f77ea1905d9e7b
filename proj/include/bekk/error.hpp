#pragma once

#include <stdexcept>
#include <string>

namespace bekk {

// Each category maps to a distinct CLI exit status.
enum class ErrorCode {
    Io = 3,
    Parse = 4,
    DimensionMismatch = 5,
    NotPositiveDefinite = 6,
    NoTerms = 7,
    Domain = 8,
    Inapplicable = 9,
    SizeLimit = 10,
    Degenerate = 11,
    Numerical = 12,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

const char* to_string(ErrorCode code) noexcept;

}  // namespace bekk
