#ifndef RESLIM_ERRORS_HPP
#define RESLIM_ERRORS_HPP

#include <stdexcept>

namespace reslim {

/// File access or input-format failure. The CLI maps this to exit code 2,
/// everything else thrown by the library to exit code 1.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace reslim

#endif
