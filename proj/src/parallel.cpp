#include "genpas/parallel.hpp"

#include <cstdlib>
#include <string>

#include "genpas/common.hpp"

namespace genpas {

unsigned thread_count() {
    unsigned n = 0;
    if (const char* env = std::getenv("GENPAS_THREADS")) {
        try {
            n = static_cast<unsigned>(std::stoul(env));
        } catch (...) {
            throw UsageError("GENPAS_THREADS must be a non-negative integer");
        }
    }
    if (n == 0) n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

}  // namespace genpas
