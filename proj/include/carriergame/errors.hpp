#pragma once

#include <stdexcept>

namespace carriergame {

/// No sign change found when bracketing a root; the efficiency curve is not
/// sigmoidal enough for the operating point to exist.
struct no_root_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Utility requested for a user whose power vector is identically zero.
struct zero_power_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// Role comparison requires an exact equilibrium for both role assignments.
struct role_equilibrium_missing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace carriergame
