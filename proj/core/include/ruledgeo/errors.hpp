#pragma once
#include <stdexcept>
#include <string>

namespace ruledgeo {

// Runtime geometry failures; the CLI maps these to exit code 2.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PointOutsideDomain : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class SingularMetric : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class DegeneratePlane : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class RankDeficientPlane : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

// Requested evaluation parameter lies beyond the chart-exit truncation.
class LeftChartDomain : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class ChartSingularity : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class NotGeneralPosition : public GeometryError {
 public:
  NotGeneralPosition(double u, const std::string& what)
      : GeometryError(what), u(u) {}
  double u;
};

class NonPositiveKappa1 : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

class HypothesisViolated : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

// Scenario-file validation failures; the CLI maps these to exit code 1.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ruledgeo
