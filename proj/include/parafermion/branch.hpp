#pragma once

#include <string>

namespace parafermion {

// The two critical solutions of the local cancellation: dense (larger x_c)
// and dilute (the dense/dilute transition line).
enum class Branch { Dense, Dilute };

std::string to_string(Branch b);
// Accepts "dense" or "dilute"; throws std::invalid_argument otherwise.
Branch parse_branch(const std::string& s);

}  // namespace parafermion
