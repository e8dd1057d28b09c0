#pragma once

#include <stdexcept>
#include <string>

namespace subriem {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    int line;
    ParseError(const std::string& what, int line_no = 0)
        : Error(line_no > 0 ? "line " + std::to_string(line_no) + ": " + what : what), line(line_no) {}
};

struct NegativeRadicand : Error { using Error::Error; };
struct NotAContactFrame : Error { using Error::Error; };
struct OrderExhausted : Error { using Error::Error; };
struct SingularMetric : Error { using Error::Error; };
struct ScalingViolation : Error { using Error::Error; };
struct NotCanonical : Error { using Error::Error; };
struct NotFlat : Error { using Error::Error; };
struct Unclassifiable : Error { using Error::Error; };
struct NotSolvPlus : Error { using Error::Error; };
struct DomainViolation : Error { using Error::Error; };
struct StepRejected : Error { using Error::Error; };
struct NotClosed : Error { using Error::Error; };
struct NotExact : Error { using Error::Error; };

struct IdentityViolation : Error {
    std::string identity;
    double residual;
    IdentityViolation(std::string name, double r)
        : Error("identity violated: " + name + " (residual " + std::to_string(r) + ")"),
          identity(std::move(name)), residual(r) {}
};

}  // namespace subriem
