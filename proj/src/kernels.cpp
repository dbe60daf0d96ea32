#include "fluxband/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>

namespace fluxband::kernels {
namespace {

const Backend* pick_auto() {
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_available()) return &avx2_backend();
#endif
    return &scalar_backend();
}

std::atomic<const Backend*> g_active{nullptr};

const Backend* init_from_env() {
    if (const char* e = std::getenv("FLUXBAND_KERNELS")) {
        std::string v(e);
        if (v == "scalar") return &scalar_backend();
#if defined(__x86_64__) || defined(_M_X64)
        if (v == "avx2" && avx2_available()) return &avx2_backend();
#endif
    }
    return pick_auto();
}

}  // namespace

const Backend& active() {
    const Backend* b = g_active.load(std::memory_order_acquire);
    if (!b) {
        b = init_from_env();
        g_active.store(b, std::memory_order_release);
    }
    return *b;
}

void select_backend(const std::string& name) {
    if (name == "auto") {
        g_active.store(pick_auto(), std::memory_order_release);
    } else if (name == "scalar") {
        g_active.store(&scalar_backend(), std::memory_order_release);
    }
#if defined(__x86_64__) || defined(_M_X64)
    else if (name == "avx2") {
        if (!avx2_available()) throw std::runtime_error("avx2 backend not supported on this CPU");
        g_active.store(&avx2_backend(), std::memory_order_release);
    }
#endif
    else {
        throw std::invalid_argument("unknown kernel backend: " + name);
    }
}

std::string active_name() { return active().name; }

}  // namespace fluxband::kernels
