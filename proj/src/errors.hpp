#pragma once

#include <stdexcept>
#include <string>

namespace converse {

enum class Errc {
    division_by_zero = 1,
    domain,
    precision_loss,
    singular,
    parse,
    io,
    invalid_argument,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace converse
