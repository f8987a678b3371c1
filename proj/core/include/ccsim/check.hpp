#pragma once

#include <stdexcept>
#include <string>

namespace ccsim {

// Always-on invariant check; these guard scheme-internal assumptions that
// must hold on every trial, not just in debug builds.
#define CCSIM_CHECK(cond, msg)                                                     \
    do {                                                                           \
        if (!(cond)) throw std::logic_error(std::string("invariant violated: ") + (msg)); \
    } while (0)

}  // namespace ccsim
