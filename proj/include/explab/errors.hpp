#ifndef EXPLAB_ERRORS_HPP
#define EXPLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace explab {

enum class errc {
    alphabet_mismatch,
    invalid_distribution,
    unsupported_support,
    disjoint_support,
    enumeration_too_large,
    precondition_violation,
    domain,
};

/// Library-wide exception carrying a machine-readable error kind.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) { throw error(code, what); }

}  // namespace explab

#endif
