#include "frsne/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace frsne::kernels {

#ifndef FRSNE_HAVE_AVX2
namespace detail {
const KernelTable* compiled_avx2_table() { return nullptr; }
} // namespace detail
#endif

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const KernelTable* initial_table() {
  if (const char* env = std::getenv("FRSNE_ISA")) {
    const std::string want(env);
    if (want == "scalar") return &scalar_table();
    if (want == "avx2" && avx2_table() != nullptr) return avx2_table();
  }
  if (const KernelTable* t = avx2_table()) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

} // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
  case Isa::scalar: return "scalar";
  case Isa::avx2: return "avx2";
  }
  return "unknown";
}

const KernelTable* avx2_table() {
  static const KernelTable* t = cpu_has_avx2() ? detail::compiled_avx2_table() : nullptr;
  return t;
}

const KernelTable& active() { return *current().load(std::memory_order_acquire); }

void select(Isa isa) {
  const KernelTable* t = isa == Isa::avx2 ? avx2_table() : &scalar_table();
  if (t == nullptr) throw std::runtime_error("kernel ISA not available: " + std::string(isa_name(isa)));
  current().store(t, std::memory_order_release);
}

} // namespace frsne::kernels
