#include "spectra_cert/parallel.hpp"

#include <cstdlib>
#include <string>

namespace spectra_cert {

int thread_count() {
  if (const char* env = std::getenv("SPECTRA_CERT_THREADS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace spectra_cert
