#ifndef ANONYABE_ERRORS_HPP
#define ANONYABE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace anonyabe {

enum class Errc {
    invalid_argument,
    io,
    format,
    invalid_point,
    policy_not_satisfied,
    privilege_refused,
    verification_failed,
    not_found,
    conflict,
    internal,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace anonyabe

#endif
