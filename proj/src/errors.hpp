#pragma once

#include <stdexcept>
#include <string>

namespace hs {

enum class errc {
    ok = 0,
    invalid_argument,
    io_error,
    diverged,
    unsupported,
    internal,
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) {
    throw error(code, what);
}

inline void require(bool cond, errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

} // namespace hs
