#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace ccrweyl {

/// Raised when a closed-form computation would lose too many digits to be trusted
/// (e.g. a near-singular combined quadratic form in a Gaussian product).
class PrecisionLoss : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Non-fatal numerical warnings (tail mass at the grid boundary, Fock truncation
/// estimates). The default handler writes to stderr.
using WarningHandler = std::function<void(const std::string&)>;

void warn(const std::string& message);

/// Installs a handler and returns the previous one.
WarningHandler set_warning_handler(WarningHandler handler);

/// Scoped replacement, restores the previous handler on destruction.
class ScopedWarningHandler {
  public:
    explicit ScopedWarningHandler(WarningHandler handler)
        : previous_(set_warning_handler(std::move(handler))) {}
    ~ScopedWarningHandler() { set_warning_handler(std::move(previous_)); }
    ScopedWarningHandler(const ScopedWarningHandler&) = delete;
    ScopedWarningHandler& operator=(const ScopedWarningHandler&) = delete;

  private:
    WarningHandler previous_;
};

}  // namespace ccrweyl
