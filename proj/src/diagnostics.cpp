#include "ccrweyl/diagnostics.hpp"

#include <iostream>
#include <mutex>

namespace ccrweyl {
namespace {

std::mutex& handler_mutex() {
    static std::mutex m;
    return m;
}

WarningHandler& current_handler() {
    static WarningHandler h = [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; };
    return h;
}

}  // namespace

void warn(const std::string& message) {
    std::lock_guard<std::mutex> lock(handler_mutex());
    if (current_handler()) current_handler()(message);
}

WarningHandler set_warning_handler(WarningHandler handler) {
    std::lock_guard<std::mutex> lock(handler_mutex());
    WarningHandler previous = std::move(current_handler());
    current_handler() = std::move(handler);
    return previous;
}

}  // namespace ccrweyl
