#pragma once

#include <stdexcept>
#include <string>

namespace sphericalis {

struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct dimension_error : error {
  explicit dimension_error(const std::string& msg) : error(msg) {}
};

struct not_divisible_error : error {
  explicit not_divisible_error(const std::string& msg) : error(msg) {}
};

struct pole_error : error {
  explicit pole_error(const std::string& msg) : error(msg) {}
};

struct not_pointed_error : error {
  explicit not_pointed_error(const std::string& msg) : error(msg) {}
};

struct not_t_adic_error : error {
  explicit not_t_adic_error(const std::string& msg) : error(msg) {}
};

struct parse_error : error {
  explicit parse_error(const std::string& msg) : error(msg) {}
};

struct consistency_error : error {
  explicit consistency_error(const std::string& msg) : error(msg) {}
};

} // namespace sphericalis
