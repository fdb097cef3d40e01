#ifndef FO2CIS_CLI_HPP
#define FO2CIS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace fo2cis {

// exit codes: 0 ok, 1 error, 2 budget exceeded, 3 check refutation,
// 10 sat, 20 unsat
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fo2cis

#endif
