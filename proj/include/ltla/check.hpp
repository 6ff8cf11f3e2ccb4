#pragma once

// Outcome of one exact identity or inequality check.

#include <string>
#include <vector>

namespace ltla {

struct IdentityCheck {
    std::string name;
    bool holds = true;
    int first_bad_order = -1; // first failing z-order, -1 when none
    std::string detail;       // where it failed, or extra context
};

inline bool all_hold(const std::vector<IdentityCheck>& checks)
{
    for (const auto& c : checks) {
        if (!c.holds) {
            return false;
        }
    }
    return true;
}

} // namespace ltla
