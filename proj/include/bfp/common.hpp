#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bfp {

/// Malformed or inconsistent user input (files, labels, dimensions).
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Default absolute tolerance for inequality checks on derived values.
inline constexpr double kDefaultTolerance = 1e-12;

/// Formats a double with 17 significant digits ("%.17g"). Used for every
/// number that ends up in a golden file or an export.
std::string format_number(double value);

/// Number of worker threads for internal parallel loops. Reads BFP_THREADS;
/// unset, unparsable or 0 means std::thread::hardware_concurrency().
std::size_t worker_count();

}  // namespace bfp
