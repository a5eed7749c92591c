#pragma once

#include <stdexcept>
#include <string>

namespace twohol {

// All thrown errors carry the originating module and the violated
// precondition so the CLI can emit machine-readable error records.
class Error : public std::runtime_error {
public:
    Error(std::string module, std::string precondition, const std::string& what)
        : std::runtime_error(what),
          module_(std::move(module)),
          precondition_(std::move(precondition)) {}

    const std::string& module_name() const { return module_; }
    const std::string& precondition() const { return precondition_; }

private:
    std::string module_;
    std::string precondition_;
};

}  // namespace twohol
