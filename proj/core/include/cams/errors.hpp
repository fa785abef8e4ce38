#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cams {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical routine failed to converge or to bracket its root.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Task effectiveness dropped to a level where the operator model breaks down.
class FatigueExhaustion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Both hypotheses assign zero probability to the observed decision.
class DegenerateLikelihood : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A simulation run aborted. The message carries the simulated time and event.
class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scenario loading failed. Carries every validation problem found, not just the first.
class ScenarioError : public std::runtime_error {
 public:
  explicit ScenarioError(std::vector<std::string> problems);

  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

}  // namespace cams
