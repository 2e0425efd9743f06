#pragma once

#include <filesystem>
#include <optional>

#include "nlsw/grid.hpp"

namespace nlsw {

// Disk cache for reference solutions: <dir>/<fnv1a64-of-params>.ref holds
// the coefficients (little-endian doubles) and a .json sidecar holds the
// exact parameters plus creation metadata. A hit requires exact parameter
// equality with the sidecar, not just a hash match. Writers stage to a
// temporary file and rename, so concurrent builders of the same key are
// safe (content is deterministic; first writer wins).
class ReferenceCache {
public:
  struct Key {
    double alpha;
    double eps;
    int p;
    double beta_exp;
    double T;
    int M;
    double tau;
    double a;
    double b;
  };

  explicit ReferenceCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  std::optional<SpectralField> load(const Key& key) const;
  void store(const Key& key, const SpectralField& field) const;

  std::filesystem::path data_path(const Key& key) const;
  std::filesystem::path sidecar_path(const Key& key) const;

private:
  std::filesystem::path dir_;
};

}  // namespace nlsw
