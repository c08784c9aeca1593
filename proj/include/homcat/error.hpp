#pragma once

#include <stdexcept>
#include <string>

namespace homcat {

enum class Errc {
    parse_error,
    schema_error,
    field_mismatch,
    shape_mismatch,
    not_exact,
    subspace_not_preserved,
    truncation_too_short,
    variable_count_mismatch,
    functoriality_violation,
    not_a_morphism,
    not_a_cocycle,
    degree_mismatch,
    endpoint_mismatch,
    not_free,
    unknown_suite,
    not_split,
    invalid_argument,
    internal,
};

inline const char* errc_name(Errc c)
{
    switch (c) {
        case Errc::parse_error: return "ParseError";
        case Errc::schema_error: return "SchemaError";
        case Errc::field_mismatch: return "FieldMismatch";
        case Errc::shape_mismatch: return "ShapeMismatch";
        case Errc::not_exact: return "NotExact";
        case Errc::subspace_not_preserved: return "SubspaceNotPreserved";
        case Errc::truncation_too_short: return "TruncationTooShort";
        case Errc::variable_count_mismatch: return "VariableCountMismatch";
        case Errc::functoriality_violation: return "FunctorialityViolation";
        case Errc::not_a_morphism: return "NotAMorphism";
        case Errc::not_a_cocycle: return "NotACocycle";
        case Errc::degree_mismatch: return "DegreeMismatch";
        case Errc::endpoint_mismatch: return "EndpointMismatch";
        case Errc::not_free: return "NotFree";
        case Errc::unknown_suite: return "UnknownSuite";
        case Errc::not_split: return "NotSplit";
        case Errc::invalid_argument: return "InvalidArgument";
        case Errc::internal: return "Internal";
    }
    return "Unknown";
}

// Engine error with a stable code, surfaced verbatim by the CLI.
class Error : public std::runtime_error {
public:
    Error(Errc c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
    Errc code() const { return code_; }
    const char* code_name() const { return errc_name(code_); }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg)
{
    throw Error(c, msg);
}

inline void require(bool ok, Errc c, const std::string& msg)
{
    if (!ok)
        fail(c, msg);
}

} // namespace homcat
