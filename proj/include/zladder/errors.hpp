#pragma once

#include <stdexcept>
#include <string>

namespace zladder {

// Base for all library errors. exit_code() is the CLI mapping:
// 1 for domain/parameter problems, 2 for convergence/tolerance failures.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
  virtual int exit_code() const noexcept { return 1; }
};

class domain_error : public error {
 public:
  using error::error;
};

class parameter_error : public error {
 public:
  using error::error;
};

class window_error : public error {
 public:
  using error::error;
};

class resource_error : public error {
 public:
  using error::error;
};

class backend_error : public error {
 public:
  using error::error;
};

class io_error : public error {
 public:
  using error::error;
};

class numeric_error : public error {
 public:
  using error::error;
  int exit_code() const noexcept override { return 2; }
};

class convergence_error : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

class tolerance_error : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

class no_crossing_error : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

class degenerate_error : public numeric_error {
 public:
  using numeric_error::numeric_error;
};

}  // namespace zladder
