#pragma once

#include <stdexcept>
#include <string>

namespace palopt {

// Base of every error raised by the library. `kind()` is a stable
// machine-readable tag used by the CLI exit codes and the HTTP service.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string &what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string &kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

#define PALOPT_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string &what) : Error(#Name, what) {}         \
    }

PALOPT_DEFINE_ERROR(ParseError);
PALOPT_DEFINE_ERROR(ValidationError);
PALOPT_DEFINE_ERROR(InvalidConfig);
PALOPT_DEFINE_ERROR(SizeMismatch);
PALOPT_DEFINE_ERROR(FilterUnsatisfiable);
PALOPT_DEFINE_ERROR(RefinementFailed);
PALOPT_DEFINE_ERROR(AllLocked);
PALOPT_DEFINE_ERROR(InvalidK);
PALOPT_DEFINE_ERROR(DegenerateVector);
PALOPT_DEFINE_ERROR(TooFewColors);

#undef PALOPT_DEFINE_ERROR

// Errors that mean "the constraints cannot be met" rather than "bad input".
inline bool is_infeasible(const Error &e) {
    return e.kind() == "RefinementFailed" || e.kind() == "FilterUnsatisfiable";
}

} // namespace palopt
