#pragma once

#include <ostream>
#include <string>

namespace lmass::tools {

// Each suite prints one "PASS"/"FAIL" line per case and returns the failure count.
int check_serre(std::ostream& os, long max_degree);
int check_identity(std::ostream& os, long cases);
int check_oracle(std::ostream& os, long max_degree);
int check_quartic(std::ostream& os, long max_degree);
int run_checks(std::ostream& os, const std::string& suite, long max_size);

}  // namespace lmass::tools
