#include "telegf/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace telegf {

int configure_threads() {
    if (const char* env = std::getenv("TELEGF_THREADS")) {
        try {
            std::size_t used = 0;
            const int n = std::stoi(env, &used);
            if (used == std::string(env).size() && n > 0) omp_set_num_threads(n);
        } catch (const std::exception&) {
        }
    }
    return active_threads();
}

int active_threads() { return omp_get_max_threads(); }

}  // namespace telegf
