#pragma once

#include <string>
#include <vector>

namespace evmix {

//! Shortest decimal string that round-trips to the same double.
std::string num_to_string(double value);

//! Fixed-width-ish display form, printf "%.6g"; used for table cells.
std::string num_to_display(double value);

//! Parse a full token as a double; throws std::invalid_argument naming the
//! token when it is not a finite number.
double parse_number(const std::string& token);

//! Parse a full token as a nonnegative integer; throws naming the token.
long long parse_integer(const std::string& token);

std::string to_lower(std::string s);
std::string trim(const std::string& s);
std::vector<std::string> split(const std::string& s, char sep);

}  // namespace evmix
