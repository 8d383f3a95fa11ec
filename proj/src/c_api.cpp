#include "scarlab/scarlab.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <stdexcept>
#include <string>

#include "scarlab/basis.hpp"
#include "scarlab/commands.hpp"
#include "scarlab/geometry.hpp"
#include "scarlab/scars.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : "unknown"; }

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

// Runs fn, translating exceptions to error codes + the thread-local message.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return SCARLAB_ERR_USAGE;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return SCARLAB_ERR_USAGE;
  } catch (const std::exception& e) {
    set_error(e.what());
    return SCARLAB_ERR_RUNTIME;
  } catch (...) {
    set_error("unknown error");
    return SCARLAB_ERR_RUNTIME;
  }
}

}  // namespace

struct scarlab_basis {
  scarlab::SectorBasis basis;
};

extern "C" {

const char* scarlab_version(void) { return "0.1.0"; }

const char* scarlab_last_error(void) { return g_last_error.c_str(); }

void scarlab_free(char* p) { std::free(p); }

int scarlab_run(const char* config_json, char** payload) {
  if (payload) *payload = nullptr;
  if (!config_json || !payload) {
    set_error("scarlab_run needs a config string and a payload out-pointer");
    return SCARLAB_ERR_USAGE;
  }
  return guarded([&]() {
    const scarlab::RunConfig cfg = scarlab::RunConfig::from_json(config_json);
    const scarlab::CommandResult res = scarlab::run_command(cfg);
    *payload = dup_string(res.payload);
    if (!*payload) {
      set_error("out of memory");
      return SCARLAB_ERR_RUNTIME;
    }
    return res.exit_code == 0 ? SCARLAB_OK : SCARLAB_ERR_VERIFY;
  });
}

scarlab_basis* scarlab_basis_new(const char* side, int L, int k, int vx,
                                 int vy) {
  scarlab_basis* handle = nullptr;
  const int rc = guarded([&]() {
    if (!side) throw std::invalid_argument("side must be lgt or ising");
    const scarlab::Side s = scarlab::side_from_name(side);
    if (s == scarlab::Side::lgt) {
      const scarlab::LadderGeometry geom(L, k);
      handle = new scarlab_basis{scarlab::enumerate_lgt_sector(geom, vx, vy)};
    } else {
      if (k != 2)
        throw std::invalid_argument("the spin-chain dual exists for k = 2 only");
      handle = new scarlab_basis{scarlab::enumerate_ising_basis(L)};
    }
    return SCARLAB_OK;
  });
  return rc == SCARLAB_OK ? handle : nullptr;
}

void scarlab_basis_free(scarlab_basis* b) { delete b; }

int64_t scarlab_basis_dimension(const scarlab_basis* b) {
  if (!b) {
    set_error("null basis handle");
    return -1;
  }
  return b->basis.dimension();
}

int scarlab_basis_n_qubits(const scarlab_basis* b) {
  if (!b) {
    set_error("null basis handle");
    return -1;
  }
  return b->basis.n_qubits;
}

uint64_t scarlab_basis_state_at(const scarlab_basis* b, int64_t i) {
  if (!b || i < 0 || i >= b->basis.dimension()) {
    set_error("basis index out of range");
    return UINT64_MAX;
  }
  return b->basis.state_at(i);
}

int scarlab_scar_count(int L) {
  try {
    return int(scarlab::scar_labels(L).size());
  } catch (const std::exception& e) {
    set_error(e.what());
    return -1;
  }
}

int scarlab_scar_amplitudes(const scarlab_basis* b, int index, double* out_re,
                            double* out_im) {
  if (!b || !out_re) {
    set_error("scarlab_scar_amplitudes needs a basis and an output buffer");
    return SCARLAB_ERR_USAGE;
  }
  return guarded([&]() {
    const auto labels =
        scarlab::scar_labels(b->basis.spec.L);
    if (index < 0 || index >= int(labels.size()))
      throw std::invalid_argument("scar index out of range");
    const scarlab::StateVector psi =
        scarlab::scar_state(b->basis, labels[size_t(index)]);
    for (int64_t i = 0; i < psi.dimension(); ++i) {
      out_re[i] = psi.amp[size_t(i)].real();
      if (out_im) out_im[i] = psi.amp[size_t(i)].imag();
    }
    return SCARLAB_OK;
  });
}

}  // extern "C"
