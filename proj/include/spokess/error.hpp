#pragma once

#include <stdexcept>
#include <string>

namespace spokess {

// Process exit codes double as error categories.
enum class ErrorCode : int {
    ok = 0,
    verdict = 1,
    config = 2,
    window = 3,
    consistency = 4,
    io = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

inline Error config_error(const std::string& s) { return Error(ErrorCode::config, s); }
inline Error window_error(const std::string& s) { return Error(ErrorCode::window, s); }
inline Error consistency_error(const std::string& s) { return Error(ErrorCode::consistency, s); }
inline Error io_error(const std::string& s) { return Error(ErrorCode::io, s); }

}  // namespace spokess
