#ifndef FLATLAB_ERROR_HPP
#define FLATLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace flatlab {

// Error kinds surfaced to the CLI as machine-readable objects.
enum class errc {
    mismatch,      // operands over different rings / ranks
    arity,         // wrong tuple length, bad degree argument
    precondition,  // operation precondition violated (e.g. d < dim R)
    domain,        // value outside the operation's domain (zero divisor, f = 0)
    resource,      // configured limit exceeded; never a wrong verdict
    parse,         // DSL syntax / resolution error
    unsupported    // request outside the engine's scope
};

inline const char* errc_name(errc k) {
    switch (k) {
        case errc::mismatch: return "mismatch";
        case errc::arity: return "arity";
        case errc::precondition: return "precondition";
        case errc::domain: return "domain";
        case errc::resource: return "resource";
        case errc::parse: return "parse";
        case errc::unsupported: return "unsupported";
    }
    return "unknown";
}

class error : public std::runtime_error {
public:
    error(errc k, std::string msg) : std::runtime_error(std::move(msg)), kind_(k) {}
    errc kind() const noexcept { return kind_; }

private:
    errc kind_;
};

[[noreturn]] inline void fail(errc k, const std::string& msg) { throw error(k, msg); }

inline void require(bool ok, errc k, const std::string& msg) {
    if (!ok) fail(k, msg);
}

}  // namespace flatlab

#endif
