#pragma once

#include <stdexcept>
#include <string>

namespace finabel {

/// Machine-readable failure categories. The CLI maps all of these to exit
/// code 2 (bad input / validation); mathematical claim failures are not
/// exceptions but report content, and map to exit code 1.
enum class Errc {
    invalid_group,
    invalid_element,
    invalid_subgroup,
    invalid_homomorphism,
    invalid_distribution,
    invalid_parameters,
    invalid_instance,
    not_invariant,
    not_applicable,
    too_large,
    parse_error,
    io_error,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::invalid_group: return "invalid-group";
        case Errc::invalid_element: return "invalid-element";
        case Errc::invalid_subgroup: return "invalid-subgroup";
        case Errc::invalid_homomorphism: return "invalid-homomorphism";
        case Errc::invalid_distribution: return "invalid-distribution";
        case Errc::invalid_parameters: return "invalid-parameters";
        case Errc::invalid_instance: return "invalid-instance";
        case Errc::not_invariant: return "not-invariant";
        case Errc::not_applicable: return "not-applicable";
        case Errc::too_large: return "too-large";
        case Errc::parse_error: return "parse-error";
        case Errc::io_error: return "io-error";
    }
    return "unknown";
}

/// Domain error carrying a category code; the what() string is prefixed with
/// the category name so CLI error output is self-describing.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace finabel
