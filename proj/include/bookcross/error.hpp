#ifndef BOOKCROSS_ERROR_HPP
#define BOOKCROSS_ERROR_HPP

#include <stdexcept>
#include <string>

namespace bookcross {

/// Caller passed arguments outside an operation's domain.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The request is well-formed but the requested path does not exist
/// (e.g. circulant-block machinery for even n).
class UnsupportedError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed text input (drawings, WCNF models, cache records).
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal consistency check failed; indicates a bug, not bad input.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
    if (!ok) throw InputError(what);
}

}  // namespace detail
}  // namespace bookcross

#endif  // BOOKCROSS_ERROR_HPP
