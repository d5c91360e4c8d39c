#pragma once

#include <string>
#include <utility>

namespace berge {

/// Outcome of a certificate check: pass, or the first violation found.
struct CheckResult {
    bool ok = true;
    std::string message;

    static CheckResult pass() { return {}; }
    static CheckResult fail(std::string why) { return {false, std::move(why)}; }
    explicit operator bool() const noexcept { return ok; }
};

}  // namespace berge
