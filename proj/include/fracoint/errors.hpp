#ifndef FRACOINT_ERRORS_HPP
#define FRACOINT_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace fracoint {

// Error taxonomy mirrored by the CLI exit codes:
//   config_error -> 2, data_error -> 3, numeric_error -> 4.
// Each error names the pipeline stage it came from.
class error : public std::runtime_error {
public:
  error(int exit_code, std::string stage, const std::string& what)
      : std::runtime_error(what), exit_code_(exit_code), stage_(std::move(stage)) {}
  int exit_code() const noexcept { return exit_code_; }
  const std::string& stage() const noexcept { return stage_; }

private:
  int exit_code_;
  std::string stage_;
};

class config_error : public error {
public:
  config_error(std::string stage, const std::string& what)
      : error(2, std::move(stage), what) {}
};

class data_error : public error {
public:
  data_error(std::string stage, const std::string& what)
      : error(3, std::move(stage), what) {}
};

class numeric_error : public error {
public:
  numeric_error(std::string stage, const std::string& what)
      : error(4, std::move(stage), what) {}
};

// A residual whose periodogram ordinates are all zero cannot carry a memory
// parameter; callers may want to distinguish this from a numeric fault.
class degenerate_residual_error : public numeric_error {
public:
  explicit degenerate_residual_error(std::string stage)
      : numeric_error(std::move(stage),
                      "degenerate residual: all periodogram ordinates are zero") {}
};

}  // namespace fracoint

#endif
