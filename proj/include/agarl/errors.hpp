#pragma once

#include <stdexcept>
#include <string>

namespace agarl {

struct shape_error : std::runtime_error {
  explicit shape_error(const std::string& msg) : std::runtime_error("shape error: " + msg) {}
};

struct param_error : std::runtime_error {
  explicit param_error(const std::string& msg) : std::runtime_error("parameter error: " + msg) {}
};

struct index_error : std::runtime_error {
  explicit index_error(const std::string& msg) : std::runtime_error("index error: " + msg) {}
};

struct empty_error : std::runtime_error {
  explicit empty_error(const std::string& msg) : std::runtime_error("empty input: " + msg) {}
};

struct unsupported_error : std::runtime_error {
  explicit unsupported_error(const std::string& msg) : std::runtime_error("unsupported operation: " + msg) {}
};

struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error("config error: " + msg) {}
};

struct format_error : std::runtime_error {
  explicit format_error(const std::string& msg) : std::runtime_error("format error: " + msg) {}
};

struct io_error : std::runtime_error {
  explicit io_error(const std::string& msg) : std::runtime_error("i/o error: " + msg) {}
};

}  // namespace agarl
