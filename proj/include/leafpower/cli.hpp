#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace leafpower {

/// Command-line entry point. args[0] is the program name. Certificates go to
/// `out` as JSON, diagnostics to `err`. Returns 0 when the property holds or
/// the object was found, 1 when it fails or nothing was found, 2 on usage or
/// input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace leafpower
