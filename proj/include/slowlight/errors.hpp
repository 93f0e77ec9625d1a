#ifndef SLOWLIGHT_ERRORS_HPP
#define SLOWLIGHT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace slowlight {

// Frequency/time discretization too coarse for the requested physics.
struct resolution_error : std::runtime_error {
  explicit resolution_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Time window cannot hold the propagated packet without wrap-around.
struct window_error : std::runtime_error {
  explicit window_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Configuration file / CLI override rejected; `path` names the field.
struct config_error : std::runtime_error {
  std::string path;
  config_error(std::string field_path, const std::string& msg)
      : std::runtime_error(field_path + ": " + msg), path(std::move(field_path)) {}
};

}  // namespace slowlight

#endif
