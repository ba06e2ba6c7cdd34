#pragma once
#include <stdexcept>
#include <string>

namespace msf {

// All library errors carry the failing stage in the message, e.g. "[group.support_test] ...".
class error : public std::runtime_error {
public:
  error(const std::string& stage, const std::string& what)
      : std::runtime_error("[" + stage + "] " + what), stage_(stage) {}
  const std::string& stage() const { return stage_; }

private:
  std::string stage_;
};

// Bad input: malformed files, invalid parameters, inconsistent spaces.
struct input_error : error {
  using error::error;
};

// Analysis declined: caps hit, truncated orbits, anything inconclusive by policy.
struct refused_error : error {
  using error::error;
};

// A floating phase landed in the ambiguous band where a support decision could flip.
struct precision_error : refused_error {
  using refused_error::refused_error;
};

// Internal consistency check failed; indicates a bug, not bad input.
struct internal_error : error {
  using error::error;
};

}  // namespace msf
