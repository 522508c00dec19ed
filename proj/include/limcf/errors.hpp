#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace limcf {

// Base for every error raised by the library. Callers that only care about
// "something geometric went wrong" can catch this one.
class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateSurface : public GeometryError {
public:
    using GeometryError::GeometryError;
};

class DomainError : public GeometryError {
public:
    using GeometryError::GeometryError;
};

class AssumptionViolated : public GeometryError {
public:
    using GeometryError::GeometryError;
};

class SingularRHS : public GeometryError {
public:
    using GeometryError::GeometryError;
};

class InvalidParameter : public GeometryError {
public:
    using GeometryError::GeometryError;
};

class MeanCurvatureZero : public GeometryError {
public:
    explicit MeanCurvatureZero(const std::string& what, std::size_t vertex = npos)
        : GeometryError(what), vertex_(vertex) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    // flat vertex index when raised by the flow, npos otherwise
    std::size_t vertex() const noexcept { return vertex_; }

private:
    std::size_t vertex_;
};

} // namespace limcf
