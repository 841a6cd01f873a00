#include "qapsat/kernels.hpp"

#include <cstdlib>

namespace qapsat::kernels {

#if defined(QAPSAT_HAVE_AVX2)
const Backend* avx2_impl();
#endif

const Backend* avx2() {
#if defined(QAPSAT_HAVE_AVX2)
  return avx2_impl();
#else
  return nullptr;
#endif
}

namespace {

const Backend* pick(std::string_view name) {
  if (name == "scalar") return &scalar();
  if (name == "avx2") return avx2();
  if (name == "auto" || name.empty()) {
    const Backend* best = avx2();
    return best ? best : &scalar();
  }
  return nullptr;
}

const Backend* g_active = nullptr;

}  // namespace

const Backend& active() {
  if (g_active == nullptr) {
    const char* env = std::getenv("QAPSAT_SIMD");
    const Backend* b = pick(env ? std::string_view(env) : std::string_view("auto"));
    g_active = b ? b : &scalar();
  }
  return *g_active;
}

bool select(std::string_view name) {
  const Backend* b = pick(name);
  if (b == nullptr) return false;
  g_active = b;
  return true;
}

std::vector<const Backend*> available() {
  std::vector<const Backend*> out{&scalar()};
  if (const Backend* b = avx2()) out.push_back(b);
  return out;
}

}  // namespace qapsat::kernels
