#pragma once

#include <stdexcept>
#include <string>

namespace uavplace {

// Oblique angle at or beyond the camera's angle limit; the footprint is unbounded.
class AngleLimit : public std::domain_error {
 public:
  explicit AngleLimit(const std::string& what) : std::domain_error(what) {}
};

class ZeroDistance : public std::domain_error {
 public:
  explicit ZeroDistance(const std::string& what) : std::domain_error(what) {}
};

class ZeroRate : public std::domain_error {
 public:
  explicit ZeroRate(const std::string& what) : std::domain_error(what) {}
};

// No placement satisfies the resolution, capture and containment constraints.
class Infeasible : public std::runtime_error {
 public:
  explicit Infeasible(const std::string& what) : std::runtime_error(what) {}
};

class SubproblemInfeasible : public std::runtime_error {
 public:
  explicit SubproblemInfeasible(const std::string& what) : std::runtime_error(what) {}
};

class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace uavplace
