#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rgg {

// Malformed or out-of-contract input (invalid arena, non-tree where a tree
// is required, bad strategy sets, ...).
struct InputError : std::runtime_error {
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A strategy violated its contract during replay (undefined on a reached
// position that has outgoing edges).
struct ContractError : std::logic_error {
  explicit ContractError(const std::string& what) : std::logic_error(what) {}
};

// A computation would exceed an explicit resource cap. `required` may be a
// lower bound when the exact size was not computed before bailing out.
struct ResourceError : std::runtime_error {
  ResourceError(const std::string& what, std::size_t required_, std::size_t cap_)
      : std::runtime_error(what + " (required " + std::to_string(required_) +
                           ", cap " + std::to_string(cap_) + ")"),
        required(required_),
        cap(cap_) {}
  std::size_t required;
  std::size_t cap;
};

}  // namespace rgg
