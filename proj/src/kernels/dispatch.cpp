#include "kcbpo/kernels.hpp"

#include <cstdlib>
#include <string>

namespace kcbpo::kernels {

#ifndef KCBPO_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

Isa select_isa() {
  if (const char* env = std::getenv("KCBPO_ISA"); env != nullptr && std::string(env) == "scalar") {
    return Isa::scalar;
  }
  if (avx2_table() != nullptr && cpu_has_avx2()) return Isa::avx2;
  return Isa::scalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = select_isa();
  return isa;
}

const KernelTable& active() {
  static const KernelTable& table = active_isa() == Isa::avx2 ? *avx2_table() : scalar_table();
  return table;
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

}  // namespace kcbpo::kernels
