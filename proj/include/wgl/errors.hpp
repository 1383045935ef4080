#pragma once

#include <stdexcept>
#include <string>

namespace wgl {

// Exit-code mapping used by the CLI: 2 parameter, 3 resource, 4 data,
// 5 unreliable numerics.  format_error is a data error with a location.

class parameter_error : public std::invalid_argument {
public:
  explicit parameter_error(const std::string& msg)
      : std::invalid_argument(msg) {}
};

class resource_error : public std::runtime_error {
public:
  explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

class data_error : public std::runtime_error {
public:
  explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

class format_error : public data_error {
public:
  format_error(const std::string& msg, std::size_t line)
      : data_error(msg + " (line " + std::to_string(line) + ")"),
        line_(line) {}
  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

class unreliable_error : public std::runtime_error {
public:
  explicit unreliable_error(const std::string& msg)
      : std::runtime_error(msg) {}
};

}  // namespace wgl
