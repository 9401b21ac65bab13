#pragma once

#include <stdexcept>
#include <string>

namespace spectral_clt {

// Error taxonomy maps 1:1 onto CLI exit codes (2/3/4).
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

struct io_error : std::runtime_error {
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace spectral_clt
