#ifndef LTLAB_ERRORS_HPP
#define LTLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ltlab {

// Bad or out-of-domain caller input (exit code 1 at the CLI).
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Zero potential or otherwise degenerate variational data.
struct degenerate_input : invalid_input {
    using invalid_input::invalid_input;
};

// l_max was too small to certify the requested number of levels.
struct channel_exhaustion : std::runtime_error {
    int l;
    explicit channel_exhaustion(int l_, const std::string& msg)
        : std::runtime_error(msg), l(l_) {}
};

// The SCF iteration lost all bound states and cannot proceed.
struct breakdown_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An internal solver failed to converge; carries the last residual.
struct numerical_failure : std::runtime_error {
    double residual;
    numerical_failure(const std::string& msg, double res)
        : std::runtime_error(msg), residual(res) {}
};

} // namespace ltlab

#endif
