#ifndef CYLFORGE_ERRORS_HH
#define CYLFORGE_ERRORS_HH

#include <stdexcept>
#include <string>

namespace cylforge {

    /// Malformed or inconsistent user input (bad grammar, mismatched rings,
    /// violated preconditions). Maps to CLI exit code 3.
    class input_error : public std::runtime_error {
    public:
        explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
    };

    /// A configurable computation cap was exceeded. Maps to CLI exit code 4.
    class resource_error : public std::runtime_error {
    public:
        explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
    };

} // namespace cylforge
#endif
