#include "mlf/parallel.hpp"

#include <cstdlib>
#include <string>

#include "mlf/errors.hpp"

namespace mlf {

unsigned worker_count() {
  const char* env = std::getenv("MLF_THREADS");
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (env == nullptr || *env == '\0') return hw;
  char* end = nullptr;
  long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 0) {
    throw DomainError(std::string("MLF_THREADS must be a nonnegative integer, got '") + env + "'");
  }
  return v == 0 ? hw : static_cast<unsigned>(v);
}

}  // namespace mlf
