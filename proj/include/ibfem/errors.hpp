#pragma once

#include <stdexcept>
#include <string>

namespace ibfem {

// invalid or inconsistent configuration / arguments -> CLI exit 1
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// requested something the toolkit deliberately does not do -> CLI exit 1
struct CapabilityError : std::runtime_error {
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

// geometry or meshing failure -> CLI exit 2
struct GeometryError : std::runtime_error {
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

// linear algebra failure (singularity, non-convergence) -> CLI exit 3
struct SolverError : std::runtime_error {
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ibfem
