#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace continuum_lab {

// Runs one command line (without the program name). Returns 0 on pass, 1 when a
// checked property fails and 2 on bad flags or errors.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace continuum_lab
