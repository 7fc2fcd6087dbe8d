#pragma once

#include <stdexcept>
#include <string>

namespace weilforge {

/// Machine-readable failure categories. The CLI maps these to the
/// "code" field of its JSON error object.
enum class errc {
    not_a_prime_power,
    out_of_range,
    not_squarefree,
    not_monic,
    invalid_degree,
    invalid_argument,
    functional_equation_violated,
    not_irreducible,
    not_weil,
    not_ordinary,
    not_simple,
    invalid_epsilon,
    too_large,
    search_exhausted,
    hypothesis_failed,
    parse_error,
    internal,
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::not_a_prime_power: return "not_a_prime_power";
    case errc::out_of_range: return "out_of_range";
    case errc::not_squarefree: return "not_squarefree";
    case errc::not_monic: return "not_monic";
    case errc::invalid_degree: return "invalid_degree";
    case errc::invalid_argument: return "invalid_argument";
    case errc::functional_equation_violated: return "functional_equation_violated";
    case errc::not_irreducible: return "not_irreducible";
    case errc::not_weil: return "not_weil";
    case errc::not_ordinary: return "not_ordinary";
    case errc::not_simple: return "not_simple";
    case errc::invalid_epsilon: return "invalid_epsilon";
    case errc::too_large: return "too_large";
    case errc::search_exhausted: return "search_exhausted";
    case errc::hypothesis_failed: return "hypothesis_failed";
    case errc::parse_error: return "parse_error";
    case errc::internal: return "internal";
    }
    return "unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    errc code() const noexcept { return code_; }
    const char* code_name() const noexcept { return errc_name(code_); }

private:
    errc code_;
};

namespace detail {

[[noreturn]] inline void internal_error(const std::string& what) {
    throw error(errc::internal, "internal error: " + what);
}

}  // namespace detail
}  // namespace weilforge
