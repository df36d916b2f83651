#include "bfp/common.hpp"

#include <cstdio>
#include <cstdlib>
#include <thread>

namespace bfp {

std::string format_number(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::size_t worker_count() {
    std::size_t n = 0;
    if (const char* env = std::getenv("BFP_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end != env && *end == '\0') n = v;
    }
    if (n == 0) n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

}  // namespace bfp
