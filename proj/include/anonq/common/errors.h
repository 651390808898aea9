#ifndef ANONQ_COMMON_ERRORS_H
#define ANONQ_COMMON_ERRORS_H

#include <stdexcept>
#include <string>

namespace anonq {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Port maps that are not bijections, dangling edges, bad file contents.
struct StructureError : Error {
    using Error::Error;
};
/// Operation undefined on this input (e.g. diameter of a non-SC graph).
struct DomainError : Error {
    using Error::Error;
};
/// Configured enumeration or branching cap exceeded.
struct CapacityError : Error {
    using Error::Error;
};
struct LookupError : Error {
    using Error::Error;
};
/// Numeric checks: unitarity, orthonormality, bijectivity, malformed tables.
struct ValidationError : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};
struct NonTerminationError : Error {
    using Error::Error;
};
struct ConstructionError : Error {
    using Error::Error;
};

}  // namespace anonq

#endif
