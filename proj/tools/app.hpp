#ifndef BBTEA_TOOLS_APP_HPP
#define BBTEA_TOOLS_APP_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace bbtea::app {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bbtea::app

#endif  // BBTEA_TOOLS_APP_HPP
