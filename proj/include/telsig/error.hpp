#ifndef TELSIG_ERROR_HPP
#define TELSIG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace telsig {

// Error categories, mapped to CLI exit codes (input -> 2, the rest -> 1).
enum class errc {
    input,        // malformed or out-of-domain user input
    not_coprime,  // gcd(a_1,...,a_m) != 1
    not_telescopic,
    truncation,   // requested more series data than the inputs justify
    internal      // a structural invariant failed; indicates a bug
};

class error : public std::runtime_error {
public:
    error(errc kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    errc kind() const noexcept { return kind_; }

private:
    errc kind_;
};

[[noreturn]] inline void fail(errc kind, const std::string& what) { throw error(kind, what); }

} // namespace telsig

#endif
