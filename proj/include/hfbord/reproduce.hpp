#pragma once
// Regression battery: one target per printed computation.

#include <cstddef>
#include <string>
#include <vector>

#include "hfbord/builtins.hpp"

namespace hfb {

struct Caps {
  std::size_t enumeration = std::size_t(1) << 20;
  std::size_t box_path = 64;
  int uv_exponent = 3;
};

struct ReproCheck {
  int criterion = 0;  // acceptance criterion number, 0 for supporting checks
  std::string label;
  bool ok = false;
};

struct ReproReport {
  std::string target;
  std::string text;
  std::vector<ReproCheck> checks;
  bool ok() const;
};

const std::vector<std::string>& reproduce_targets();
// Throws std::invalid_argument on an unknown target.
ReproReport reproduce(const std::string& target, const Builtins& b, const Caps& caps = {});

}  // namespace hfb
