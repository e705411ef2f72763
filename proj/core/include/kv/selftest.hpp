#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kv {

struct SelfTestCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SelfTestReport {
    std::vector<SelfTestCheck> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

/// Runs the randomized property corpus (ring identities, move invariance,
/// strategy independence, closed form, oracle agreement). `size` scales the
/// corpus; the default keeps the run under a few seconds.
SelfTestReport run_selftest(std::uint64_t seed, int size);

}  // namespace kv
