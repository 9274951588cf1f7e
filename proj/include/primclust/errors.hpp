#ifndef PRIMCLUST_ERRORS_HPP
#define PRIMCLUST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace primclust {

// Error taxonomy, mapped to CLI exit codes:
//   ConfigError -> 2, DataError/ContractError -> 3, DomainError/DegenerateError -> 4.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

class ContractError : public std::logic_error {
 public:
  explicit ContractError(const std::string& msg) : std::logic_error(msg) {}
};

class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Degenerate numeric situation the caller can recover from by supplying a
// parameter explicitly (e.g. an all-equal trajectory has zero std deviation).
class DegenerateError : public DomainError {
 public:
  explicit DegenerateError(const std::string& msg) : DomainError(msg) {}
};

}  // namespace primclust

#endif
